#include "rqf/qfield.hpp"

#include <cmath>
#include <map>

#include "field_cache.hpp"
#include "rqf/errors.hpp"

namespace rqf {

QuadraticField::QuadraticField(std::int64_t m) : m_(m) {
  if (m < 2) throw Error(ErrorKind::MTooSmall, "m must be at least 2, got " + std::to_string(m));
  if (!is_squarefree(static_cast<std::uint64_t>(m)))
    throw Error(ErrorKind::NotSquarefree, "m=" + std::to_string(m) + " is not squarefree");
  half_basis_ = (m % 4 == 1);
  disc_ = half_basis_ ? m : 4 * m;
  sqrt_floor_ = isqrt(Int(static_cast<long>(disc_)));
  cache_ = std::make_shared<Cache>();
}

QuadraticField make_field(std::int64_t m) { return QuadraticField(m); }

QuadInt QuadraticField::make(const Int& a, const Int& b) const {
  if ((a - b * disc_) % 2 != 0)
    throw Error(ErrorKind::InvalidArgument, "coordinates fail a = bD (mod 2)");
  return QuadInt{a, b, disc_};
}

QuadInt QuadraticField::from_sqrt_m(const Int& u, const Int& v) const {
  // u + v sqrt(m) = (2u + v' sqrt D)/2 with v' = 2v when D = m, v when D = 4m.
  return half_basis_ ? make(2 * u, 2 * v) : make(2 * u, v);
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d < 2) return false;
  int e = 0;
  std::int64_t odd = d;
  while (odd % 2 == 0) {
    odd /= 2;
    ++e;
  }
  if (!is_squarefree(static_cast<std::uint64_t>(odd))) return false;
  if (e == 1 || e > 3) return false;
  if (e == 0 && odd % 4 != 1) return false;
  if (e == 2 && odd % 4 == 1) return false;
  return d != 1;
}

std::vector<std::int64_t> fundamental_discriminants(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = std::max<std::int64_t>(lo, 2); d <= hi; ++d) {
    if (is_fundamental_discriminant(d)) out.push_back(d);
  }
  return out;
}

std::int64_t radicand_of(std::int64_t d) {
  if (!is_fundamental_discriminant(d))
    throw Error(ErrorKind::InvalidArgument, std::to_string(d) + " is not a fundamental discriminant");
  return d % 4 == 0 ? d / 4 : d;
}

namespace {

void check_same(const QuadInt& x, const QuadInt& y) {
  if (x.disc != y.disc)
    throw Error(ErrorKind::FieldMismatch, "elements of Q(sqrt " + std::to_string(x.disc) +
                                              ") and Q(sqrt " + std::to_string(y.disc) + ")");
}

void normalize(QuadFrac& f) {
  if (f.z < 0) {
    f.x = -f.x;
    f.y = -f.y;
    f.z = -f.z;
  }
  Int g = gcd(gcd(f.x, f.y), f.z);
  if (g > 1) {
    mpz_divexact(f.x.get_mpz_t(), f.x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(f.y.get_mpz_t(), f.y.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(f.z.get_mpz_t(), f.z.get_mpz_t(), g.get_mpz_t());
  }
}

}  // namespace

QuadInt operator*(const QuadInt& x, const QuadInt& y) {
  check_same(x, y);
  Int a = x.a * y.a + x.b * y.b * x.disc;
  Int b = x.a * y.b + x.b * y.a;
  mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), 2);
  mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), 2);
  return QuadInt{std::move(a), std::move(b), x.disc};
}

QuadInt operator+(const QuadInt& x, const QuadInt& y) {
  check_same(x, y);
  return QuadInt{x.a + y.a, x.b + y.b, x.disc};
}

QuadInt operator-(const QuadInt& x, const QuadInt& y) {
  check_same(x, y);
  return QuadInt{x.a - y.a, x.b - y.b, x.disc};
}

QuadInt operator-(const QuadInt& x) { return QuadInt{-x.a, -x.b, x.disc}; }

QuadInt conj(const QuadInt& x) { return QuadInt{x.a, -x.b, x.disc}; }

Int norm(const QuadInt& x) {
  Int n = x.a * x.a - x.b * x.b * x.disc;
  mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), 4);
  return n;
}

Int trace(const QuadInt& x) { return x.a; }

QuadInt pow(const QuadInt& x, unsigned long e) {
  QuadInt r{2, 0, x.disc};
  QuadInt base = x;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

QuadInt scale(const QuadInt& x, const Int& n) { return QuadInt{x.a * n, x.b * n, x.disc}; }

Int content(const QuadInt& x) {
  // x = u + v*w with w = (delta + sqrt D)/2, delta = D mod 2.
  const long delta = x.disc % 2 == 0 ? 0 : 1;
  Int v = x.b;
  Int u = (x.a - x.b * delta) / 2;
  Int g = gcd(u, v);
  return g == 0 ? Int(1) : g;
}

QuadInt divexact(const QuadInt& x, const Int& n) {
  QuadFrac f = divide(to_frac(x), n);
  return to_int(f);
}

QuadFrac to_frac(const QuadInt& x) {
  QuadFrac f{x.a, x.b, 2, x.disc};
  normalize(f);
  return f;
}

QuadFrac operator*(const QuadFrac& x, const QuadFrac& y) {
  if (x.disc != y.disc) throw Error(ErrorKind::FieldMismatch, "QuadFrac discriminant mismatch");
  QuadFrac r{x.x * y.x + x.y * y.y * x.disc, x.x * y.y + x.y * y.x, x.z * y.z, x.disc};
  normalize(r);
  return r;
}

QuadFrac divide(const QuadFrac& x, const Int& n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
  QuadFrac r{x.x, x.y, x.z * n, x.disc};
  normalize(r);
  return r;
}

QuadInt to_int(const QuadFrac& f) {
  // (x + y sqrt D)/z = (a + b sqrt D)/2  <=>  a = 2x/z, b = 2y/z
  Int a2 = 2 * f.x, b2 = 2 * f.y;
  if (!mpz_divisible_p(a2.get_mpz_t(), f.z.get_mpz_t()) ||
      !mpz_divisible_p(b2.get_mpz_t(), f.z.get_mpz_t()))
    throw Error(ErrorKind::InvalidArgument, "element is not integral");
  Int a = a2 / f.z, b = b2 / f.z;
  if ((a - b * f.disc) % 2 != 0) throw Error(ErrorKind::InvalidArgument, "element is not integral");
  return QuadInt{a, b, f.disc};
}

int sign_of(const Int& u, const Int& v, std::int64_t disc) {
  const int su = sgn(u), sv = sgn(v);
  if (su >= 0 && sv >= 0) return (su || sv) ? 1 : 0;
  if (su <= 0 && sv <= 0) return -1;
  Int diff = u * u - v * v * disc;  // never zero: D is not a square
  return su > 0 ? sgn(diff) : -sgn(diff);
}

namespace {

double log_abs_mpz(const Int& n) {
  long e = 0;
  double d = mpz_get_d_2exp(&e, n.get_mpz_t());
  return std::log(std::fabs(d)) + static_cast<double>(e) * std::log(2.0);
}

double log_add(double la, double lb) {
  if (la < lb) std::swap(la, lb);
  return la + std::log1p(std::exp(lb - la));
}

// log(|u| + |v| sqrt D), one of u, v nonzero.
double log_same_sign(const Int& u, const Int& v, std::int64_t disc) {
  if (v == 0) return log_abs_mpz(u);
  double lv = log_abs_mpz(v) + 0.5 * std::log(static_cast<double>(disc));
  if (u == 0) return lv;
  return log_add(log_abs_mpz(u), lv);
}

}  // namespace

double log_abs(const QuadInt& x) {
  if (x.a == 0 && x.b == 0) throw Error(ErrorKind::InvalidArgument, "log of zero");
  const double log2 = std::log(2.0);
  if (sgn(x.a) * sgn(x.b) >= 0) return log_same_sign(x.a, x.b, x.disc) - log2;
  // |x| = |N(x)| / |conj(x)|
  Int n = norm(x);
  return log_abs_mpz(n) - (log_same_sign(x.a, x.b, x.disc) - log2);
}

bool real_ge_one(const QuadInt& x) { return sign_of(x.a - 2, x.b, x.disc) >= 0; }

int compare_real(const QuadInt& x, const QuadInt& y) {
  if (x.disc != y.disc) throw Error(ErrorKind::FieldMismatch, "compare_real mismatch");
  return sign_of(x.a - y.a, x.b - y.b, x.disc);
}

namespace {

std::string frac_str(const Int& num, const Int& den) {
  Int g = gcd(num, den);
  if (g == 0) g = 1;
  Int n = num / g, d = den / g;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return d == 1 ? n.get_str() : n.get_str() + "/" + d.get_str();
}

}  // namespace

std::pair<std::string, std::string> sqrt_m_coords(const QuadInt& x, const QuadraticField& k) {
  if (k.half_basis()) return {frac_str(x.a, 2), frac_str(x.b, 2)};
  return {frac_str(x.a, 2), x.b.get_str()};
}

std::string to_string(const QuadInt& x, const QuadraticField& k) {
  auto [r, s] = sqrt_m_coords(x, k);
  const std::string rad = "sqrt(" + std::to_string(k.m()) + ")";
  if (x.b == 0) return r;
  std::string coeff;
  bool neg = s[0] == '-';
  std::string mag = neg ? s.substr(1) : s;
  coeff = (mag == "1" ? rad : mag + "*" + rad);
  if (x.a == 0) return (neg ? "-" : "") + coeff;
  return r + (neg ? " - " : " + ") + coeff;
}

bool is_split(const QuadraticField& k, const Int& p) {
  if (Int(static_cast<long>(k.disc())) % p == 0)
    throw Error(ErrorKind::Ramified, p.get_str() + " divides D=" + std::to_string(k.disc()));
  return kronecker(Int(static_cast<long>(k.disc())), p) == 1;
}

CFExpansion expand_quadratic_irrational(std::int64_t disc, const Int& p0, const Int& q0) {
  const Int d(static_cast<long>(disc));
  if (q0 == 0 || (d - p0 * p0) % q0 != 0)
    throw Error(ErrorKind::InvalidArgument, "seed must satisfy Q0 | D - P0^2");
  const Int s = isqrt(d);
  CFExpansion cf;
  cf.seed_p = p0;
  cf.seed_q = q0;
  cf.disc = disc;
  std::map<std::pair<Int, Int>, std::size_t> seen;
  Int p = p0, q = q0;
  while (true) {
    auto key = std::make_pair(p, q);
    auto it = seen.find(key);
    if (it != seen.end()) {
      cf.preperiod = it->second;
      cf.period = cf.states.size() - it->second;
      break;
    }
    seen.emplace(key, cf.states.size());
    cf.states.push_back(key);
    // floor((P + sqrt D)/Q)
    Int a = q > 0 ? floor_div(p + s, q) : floor_div(p + s + 1, q);
    cf.partial_quotients.push_back(a);
    Int p_next = a * q - p;
    Int q_next = (d - p_next * p_next) / q;
    p = p_next;
    q = q_next;
  }
  return cf;
}

CFExpansion expand_omega(const QuadraticField& k) {
  return expand_quadratic_irrational(k.disc(), Int(k.disc() % 2 == 0 ? 0 : 1), Int(2));
}

}  // namespace rqf
