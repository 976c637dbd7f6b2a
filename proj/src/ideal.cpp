#include "rqf/ideal.hpp"

#include "rqf/errors.hpp"

namespace rqf {

namespace {

Int disc_int(std::int64_t d) { return Int(static_cast<long>(d)); }

// b normalized into (-a, a].
Int center(const Int& b, const Int& a) {
  Int two_a = 2 * a;
  Int r = mod(b, two_a);
  if (r > a) r -= two_a;
  return r;
}

// Coordinates in the basis (1, w), w = (delta + sqrt D)/2.
struct UV {
  Int u;
  Int v;
};

UV to_uv(const QuadInt& x) {
  const long delta = x.disc & 1;
  Int u = x.a - x.b * delta;
  mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), 2);
  return {u, x.b};
}

UV mul_uv(const UV& x, const UV& y, std::int64_t disc) {
  const long delta = disc & 1;
  const Int k = disc_int((disc - delta) / 4);
  Int vv = x.v * y.v;
  return {x.u * y.u + vv * k, x.u * y.v + x.v * y.u + vv * delta};
}

// Hermite basis (x1, 0), (x2, y) of the lattice spanned by the vectors.
struct Hnf {
  Int x1;
  Int x2;
  Int y;
};

Hnf hnf(const std::vector<UV>& vs) {
  Hnf h{0, 0, 0};
  for (const auto& w : vs) {
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h.y.get_mpz_t(), w.v.get_mpz_t());
    if (g == 0) {
      h.x1 = gcd(h.x1, w.u);
      continue;
    }
    Int kill = (w.v / g) * h.x2 - (h.y / g) * w.u;
    h.x2 = s * h.x2 + t * w.u;
    h.y = g;
    h.x1 = gcd(h.x1, kill);
  }
  if (h.x1 != 0) h.x2 = mod(h.x2, h.x1);
  return h;
}

IdealProduct from_hnf(const Hnf& h, std::int64_t disc) {
  if (h.y == 0 || h.x1 == 0) throw Error(ErrorKind::InvalidArgument, "degenerate lattice");
  const long delta = disc & 1;
  Int g = h.y;
  Int a = h.x1 / g;
  Int b = 2 * (h.x2 / g) + delta;
  return {g, make_ideal(a, b, disc)};
}

std::vector<UV> basis(const Ideal& I) {
  const long delta = I.disc & 1;
  return {{I.a, 0}, {(I.b - delta) / 2, 1}};
}

}  // namespace

Ideal make_ideal(const Int& a, const Int& b, std::int64_t disc) {
  if (a <= 0) throw Error(ErrorKind::InvalidArgument, "ideal norm must be positive");
  Int r = b * b - disc_int(disc);
  if (!mpz_divisible_p(r.get_mpz_t(), Int(4 * a).get_mpz_t()))
    throw Error(ErrorKind::InvalidArgument,
                "b^2 != D (mod 4a) for a=" + a.get_str() + " b=" + b.get_str());
  return Ideal{a, center(b, a), disc};
}

Ideal unit_ideal(std::int64_t disc) { return make_ideal(1, disc & 1, disc); }

Ideal prime_ideal(const QuadraticField& k, const Int& q, bool other) {
  auto root = sqrt_disc_mod_4q(disc_int(k.disc()), q);
  if (!root) throw Error(ErrorKind::InvalidArgument, q.get_str() + " is inert");
  return make_ideal(q, other ? Int(-*root) : *root, k.disc());
}

Ideal conj(const Ideal& I) { return make_ideal(I.a, -I.b, I.disc); }

Form to_form(const Ideal& I) {
  Int c = (I.b * I.b - disc_int(I.disc)) / (4 * I.a);
  return Form{I.a, I.b, c};
}

Ideal to_ideal(const Form& f, std::int64_t disc) {
  if (f.discriminant() != disc_int(disc)) throw Error(ErrorKind::InvalidArgument, "form discriminant");
  return make_ideal(f.A, f.B, disc);
}

bool is_reduced(const Form& f, std::int64_t disc) {
  const Int s = isqrt(disc_int(disc));
  Int two_a = 2 * abs(f.A);
  // sqrt D is irrational, so strict inequalities with sqrt D become integer ones.
  return f.B > 0 && f.B <= s && s - f.B < two_a && two_a <= s + f.B;
}

IdealProduct multiply(const Ideal& I, const Ideal& J) {
  if (I.disc != J.disc) throw Error(ErrorKind::FieldMismatch, "ideal product across fields");
  auto bi = basis(I), bj = basis(J);
  std::vector<UV> prods;
  prods.reserve(4);
  for (const auto& x : bi)
    for (const auto& y : bj) prods.push_back(mul_uv(x, y, I.disc));
  return from_hnf(hnf(prods), I.disc);
}

IdealProduct principal_ideal(const QuadInt& gamma) {
  if (gamma.a == 0 && gamma.b == 0) throw Error(ErrorKind::InvalidArgument, "zero ideal");
  UV g = to_uv(gamma);
  UV gw = mul_uv(g, UV{0, 1}, gamma.disc);
  return from_hnf(hnf({g, gw}), gamma.disc);
}

bool contains(const Ideal& I, const QuadInt& x) {
  if (I.disc != x.disc) throw Error(ErrorKind::FieldMismatch, "membership across fields");
  UV c = to_uv(x);
  const long delta = I.disc & 1;
  Int rest = c.u - c.v * ((I.b - delta) / 2);
  return mpz_divisible_p(rest.get_mpz_t(), I.a.get_mpz_t()) != 0;
}

bool is_reduced(const Ideal& I) {
  const Int s = isqrt(disc_int(I.disc));
  Int two_a = 2 * I.a;
  // Representative of b in (s - 2a, s].
  Int bw = s - mod(s - I.b, two_a);
  return two_a <= s + bw;
}

TrackedIdeal track(const Ideal& I) { return TrackedIdeal{I, QuadFrac{1, 0, 1, I.disc}}; }

namespace {

TrackedIdeal rho_step(const TrackedIdeal& t, const Int& s) {
  const Ideal& I = t.ideal;
  const Int d = disc_int(I.disc);
  Int c = (I.b * I.b - d) / (4 * I.a);
  Int a2 = abs(c);
  Int b2;
  if (a2 > s) {
    b2 = center(-I.b, a2);
  } else {
    Int two = 2 * a2;
    b2 = s - mod(s + I.b, two);  // = -b (mod 2|c|), largest value <= s
  }
  QuadFrac mu{I.b, 1, 2 * c, I.disc};
  TrackedIdeal out;
  out.ideal = Ideal{a2, center(b2, a2), I.disc};
  out.factor = t.factor * mu;
  return out;
}

}  // namespace

TrackedIdeal rho(const TrackedIdeal& t) { return rho_step(t, isqrt(disc_int(t.ideal.disc))); }

TrackedIdeal reduce(const TrackedIdeal& t) {
  const Int s = isqrt(disc_int(t.ideal.disc));
  TrackedIdeal cur = t;
  for (int guard = 0; !is_reduced(cur.ideal); ++guard) {
    if (guard > 100000) throw Error(ErrorKind::InvalidArgument, "reduction did not terminate");
    cur = rho_step(cur, s);
  }
  return cur;
}

TrackedIdeal reduce(const Ideal& I) { return reduce(track(I)); }

Ideal reduce_ideal(const Ideal& I) {
  const Int s = isqrt(disc_int(I.disc));
  const Int d = disc_int(I.disc);
  Ideal cur = I;
  for (int guard = 0; !is_reduced(cur); ++guard) {
    if (guard > 100000) throw Error(ErrorKind::InvalidArgument, "reduction did not terminate");
    Int c = (cur.b * cur.b - d) / (4 * cur.a);
    Int a2 = abs(c);
    Int b2 = a2 > s ? Int(-cur.b) : Int(s - mod(s + cur.b, 2 * a2));
    cur = Ideal{a2, center(b2, a2), cur.disc};
  }
  return cur;
}

TrackedIdeal tracked_multiply(const TrackedIdeal& x, const TrackedIdeal& y) {
  IdealProduct p = multiply(x.ideal, y.ideal);
  QuadFrac f = x.factor * y.factor;
  f = f * QuadFrac{p.content, 0, 1, f.disc};
  return reduce(TrackedIdeal{p.ideal, f});
}

TrackedIdeal tracked_pow(const TrackedIdeal& x, unsigned long e) {
  TrackedIdeal r = track(unit_ideal(x.ideal.disc));
  TrackedIdeal base = x;
  bool first = true;
  while (e) {
    if (e & 1) {
      r = first ? reduce(base) : tracked_multiply(r, base);
      first = false;
    }
    e >>= 1;
    if (e) base = tracked_multiply(base, base);
  }
  return r;
}

}  // namespace rqf
