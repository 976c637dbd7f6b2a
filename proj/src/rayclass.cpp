#include "rqf/rayclass.hpp"

#include <algorithm>

#include "rqf/classgroup.hpp"
#include "rqf/errors.hpp"

namespace rqf {

namespace {

// Guard digits so the log series can divide by n with p | n.
int guard_digits(std::int64_t p, int t) {
  int e = 0;
  for (std::int64_t q = p; q <= 2 * t + 16; q *= p) ++e;
  return e;
}

int series_terms(int t) { return 2 * t + 16; }

std::vector<Int> prime_factors(const Int& n) {
  std::vector<Int> out;
  for (const auto& [q, e] : factor(n)) out.push_back(q);
  return out;
}

}  // namespace

ResidueGroup::ResidueGroup(const QuadraticField& k, std::int64_t p, int t)
    : disc_(k.disc()), p_(p), t_(t) {
  if (t < 2) throw Error(ErrorKind::InvalidArgument, "precision t must be at least 2");
  const Int pp(static_cast<long>(p));
  if (!is_prime(pp) || p == 2) throw Error(ErrorKind::InvalidArgument, "p must be an odd prime");
  split_ = is_split(k, pp);  // throws Ramified
  pt_ = ipow(pp, static_cast<unsigned long>(t));
  const Int d(static_cast<long>(disc_));
  const Int pt1 = ipow(pp, static_cast<unsigned long>(t - 1));

  if (split_) {
    Int r = *sqrt_mod_prime(mod(d, pp), pp);
    r = std::min(r, Int(pp - r));
    r1_ = hensel_lift_sqrt(d, r, pp, t + guard_digits(p, t));
    orders_ = {Int(p - 1), Int(p - 1), pt1, pt1};
    // Primitive root and index table mod p.
    const Int n(p - 1);
    auto qs = prime_factors(n);
    std::int64_t g = 2;
    for (;; ++g) {
      bool ok = true;
      for (const auto& q : qs)
        if (powmod(Int(static_cast<long>(g)), n / q, pp) == 1) ok = false;
      if (ok) break;
    }
    index_.assign(static_cast<std::size_t>(p), -1);
    std::int64_t x = 1;
    for (std::int64_t i = 0; i < p - 1; ++i) {
      index_[static_cast<std::size_t>(x)] = i;
      x = static_cast<std::int64_t>((static_cast<__int128>(x) * g) % p);
    }
  } else {
    orders_ = {Int(p * p - 1), pt1, pt1};
    const Int n(p * p - 1);
    auto qs = prime_factors(n);
    const std::int64_t dm = mod(d, pp).get_si();
    auto mulp = [&](std::pair<std::int64_t, std::int64_t> x, std::pair<std::int64_t, std::int64_t> y) {
      __int128 u = static_cast<__int128>(x.first) * y.first + static_cast<__int128>(x.second) * y.second % p * dm;
      __int128 v = static_cast<__int128>(x.first) * y.second + static_cast<__int128>(x.second) * y.first;
      return std::make_pair(static_cast<std::int64_t>(u % p), static_cast<std::int64_t>(v % p));
    };
    auto powp = [&](std::pair<std::int64_t, std::int64_t> x, Int e) {
      std::pair<std::int64_t, std::int64_t> r{1, 0};
      while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mulp(r, x);
        x = mulp(x, x);
        e >>= 1;
      }
      return r;
    };
    std::pair<std::int64_t, std::int64_t> g{0, 1};
    for (std::int64_t c = 0;; ++c) {
      g = {c % p, 1 + c / p};
      if (g.second >= p) throw Error(ErrorKind::InvalidArgument, "no generator of F_{p^2}");
      bool ok = true;
      for (const auto& q : qs)
        if (powp(g, n / q) == std::make_pair<std::int64_t, std::int64_t>(1, 0)) ok = false;
      if (ok) break;
    }
    index_.assign(static_cast<std::size_t>(p * p), -1);
    std::pair<std::int64_t, std::int64_t> x{1, 0};
    for (std::int64_t i = 0; i < p * p - 1; ++i) {
      index_[static_cast<std::size_t>(x.first + p * x.second)] = i;
      x = mulp(x, g);
    }
  }
}

Int ResidueGroup::size() const {
  Int n = 1;
  for (const auto& o : orders_) n *= o;
  return n;
}

ResidueGroup::Res ResidueGroup::reduce(const QuadInt& x, const Int& m) const {
  Int inv2 = invmod(Int(2), m);
  return Res{mod(x.a * inv2, m), mod(x.b * inv2, m)};
}

ResidueGroup::Res ResidueGroup::mul(const Res& x, const Res& y, const Int& m) const {
  const Int d(static_cast<long>(disc_));
  return Res{mod(x.u * y.u + x.v * y.v * d, m), mod(x.u * y.v + x.v * y.u, m)};
}

ResidueGroup::Res ResidueGroup::pow(Res x, Int e, const Int& m) const {
  Res r{1, 0};
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul(r, x, m);
    e >>= 1;
    if (e > 0) x = mul(x, x, m);
  }
  return r;
}

bool ResidueGroup::is_one(const Res& x) const { return mod(x.u, pt_) == 1 && mod(x.v, pt_) == 0; }

std::int64_t ResidueGroup::residue_index(const Res& x) const {
  const Int pp(static_cast<long>(p_));
  std::int64_t u = mod(x.u, pp).get_si(), v = mod(x.v, pp).get_si();
  std::int64_t i = index_.at(static_cast<std::size_t>(split_ ? u : u + p_ * v));
  if (i < 0) throw Error(ErrorKind::NotCoprime, "residue is not a unit");
  return i;
}

std::pair<Int, Int> ResidueGroup::log_over_p(const Res& y) const {
  const Int pp(static_cast<long>(p_));
  const int guard = guard_digits(p_, t_);
  const Int big = ipow(pp, static_cast<unsigned long>(t_ + guard));
  Res z{mod(y.u - 1, big), mod(y.v, big)};
  Res zn = z;
  Int su = 0, sv = 0;
  for (int n = 1; n <= series_terms(t_); ++n) {
    if (n > 1) zn = mul(zn, z, big);
    int vn = valuation(static_cast<std::int64_t>(n), p_);
    Int pv = ipow(pp, static_cast<unsigned long>(vn));
    Int unit = Int(n) / pv;
    Int inv = invmod(unit, pt_);
    Int tu = (zn.u / pv) * inv, tv = (zn.v / pv) * inv;
    if (n % 2 == 0) {
      tu = -tu;
      tv = -tv;
    }
    su += tu;
    sv += tv;
  }
  su = mod(su, pt_);
  sv = mod(sv, pt_);
  if (su % pp != 0 || sv % pp != 0) throw Error(ErrorKind::InvalidArgument, "log not divisible by p");
  const Int pt1 = pt_ / pp;
  return {mod(su / pp, pt1), mod(sv / pp, pt1)};
}

std::vector<Int> ResidueGroup::coordinates(const QuadInt& x) const {
  const Int pp(static_cast<long>(p_));
  const int guard = guard_digits(p_, t_);
  const Int big = ipow(pp, static_cast<unsigned long>(t_ + guard));
  if (split_) {
    std::vector<Int> out(4);
    Int inv2 = invmod(Int(2), big);
    for (int i = 0; i < 2; ++i) {
      Int r = i == 0 ? r1_ : Int(-r1_);
      Int phi = mod((x.a + x.b * r) * inv2, big);
      if (phi % pp == 0) throw Error(ErrorKind::NotCoprime, "element is not prime to p");
      out[static_cast<std::size_t>(i)] = residue_index(Res{phi, 0});
      Res y = pow(Res{phi, 0}, Int(p_ - 1), big);
      out[static_cast<std::size_t>(2 + i)] = log_over_p(y).first;
    }
    return out;
  }
  Res xr = reduce(x, big);
  Res y = pow(xr, Int(p_ * p_ - 1), big);
  auto [lu, lv] = log_over_p(y);
  return {Int(residue_index(xr)), lu, lv};
}

Int ResidueGroup::element_order(const QuadInt& x) const {
  Res xr = reduce(x, pt_);
  Int n = size();
  std::vector<Int> qs;
  for (const auto& o : orders_)
    for (const auto& q : prime_factors(o))
      if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
  for (const auto& q : qs)
    while (n % q == 0 && is_one(pow(xr, n / q, pt_))) n /= q;
  return n;
}

bool ResidueGroup::minus_one_is_power(const QuadInt& x) const {
  Int n = element_order(x);
  if (n % 2 != 0) return false;
  Res h = pow(reduce(x, pt_), n / 2, pt_);
  return mod(h.u + 1, pt_) == 0 && mod(h.v, pt_) == 0;
}

AbelianPresentation ray_class_structure(const QuadraticField& k, std::int64_t p, int t) {
  ResidueGroup G(k, p, t);
  const ClassGroup& cg = k.class_group();
  const ClassGroupStructure& st = cg.structure();
  const UnitRecord& unit = k.unit();

  const std::size_t nr = G.orders().size();
  const std::size_t nc = st.cyclic_orders.size();
  AbelianPresentation out;
  for (std::size_t i = 0; i < nr; ++i) out.labels.push_back("residue" + std::to_string(i));

  std::vector<std::pair<Ideal, QuadInt>> witnesses;
  for (std::size_t j = 0; j < nc; ++j) {
    const int cls = cg.class_of(st.generators[j]);
    Ideal q = cg.prime_in_class(cls, p);
    auto g = cg.generator(tracked_pow(track(q), static_cast<unsigned long>(st.cyclic_orders[j])));
    if (!g) throw Error(ErrorKind::GeneratorSearchFailed, "class generator power is not principal");
    witnesses.emplace_back(q, *g);
    out.labels.push_back("ideal[" + q.a.get_str() + "," + q.b.get_str() + "]");
  }

  const std::size_t n = nr + nc;
  auto row = [&]() { return std::vector<Int>(n, 0); };
  for (std::size_t i = 0; i < nr; ++i) {
    auto r = row();
    r[i] = G.orders()[i];
    out.relations.push_back(r);
  }
  for (const QuadInt& u : {k.make(-2, 0), unit.eps}) {
    auto c = G.coordinates(u);
    auto r = row();
    for (std::size_t i = 0; i < nr; ++i) r[i] = c[i];
    out.relations.push_back(r);
  }
  for (std::size_t j = 0; j < nc; ++j) {
    auto c = G.coordinates(witnesses[j].second);
    auto r = row();
    for (std::size_t i = 0; i < nr; ++i) r[i] = -c[i];
    r[nr + j] = st.cyclic_orders[j];
    out.relations.push_back(r);
  }

  for (const auto& d : elementary_divisors(out.relations)) {
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "ray class group is not finite");
    out.divisors.push_back(d);
  }
  std::reverse(out.divisors.begin(), out.divisors.end());

  Int image = G.element_order(unit.eps);
  if (!G.minus_one_is_power(unit.eps)) image *= 2;
  out.expected_order = Int(static_cast<long>(cg.h())) * G.size() / image;
  return out;
}

std::vector<Int> torsion_from_divisors(const std::vector<Int>& divisors, std::int64_t p) {
  std::vector<Int> out;
  const Int pp(static_cast<long>(p));
  for (std::size_t i = 1; i < divisors.size(); ++i) {
    int v = valuation(divisors[i], pp);
    if (v > 0) out.push_back(ipow(pp, static_cast<unsigned long>(v)));
  }
  return out;
}

TorsionStructure torsion_structure(const QuadraticField& k, std::int64_t p, int t) {
  std::vector<int> ladder{t};
  for (int s : {16, 32})
    if (s > t) ladder.push_back(s);
  for (int s : ladder) {
    auto a = ray_class_structure(k, p, s);
    auto b = ray_class_structure(k, p, s + 1);
    auto ta = torsion_from_divisors(a.divisors, p);
    if (ta == torsion_from_divisors(b.divisors, p)) {
      TorsionStructure out;
      out.rank = static_cast<int>(ta.size());
      out.p_part_orders = ta;
      out.saturated_at = s;
      out.divisors = a.divisors;
      return out;
    }
  }
  throw Error(ErrorKind::NotSaturated, "torsion structure did not stabilize by t=32");
}

}  // namespace rqf
