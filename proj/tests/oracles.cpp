#include "oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace oracle {

namespace {

Int isqrt_floor(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool perfect_square(const Int& n, Int& root) {
  if (n < 0) return false;
  root = isqrt_floor(n);
  return root * root == n;
}

}  // namespace

bool squarefree(std::int64_t n) {
  if (n <= 0) return false;
  for (std::int64_t q = 2; q * q <= n; ++q)
    if (n % (q * q) == 0) return false;
  return true;
}

bool fundamental(std::int64_t D) {
  if (D < 2) return false;
  if (D % 4 == 1) return squarefree(D);
  if (D % 4 != 0) return false;
  const std::int64_t m = D / 4;
  return (m % 4 == 2 || m % 4 == 3) && squarefree(m);
}

std::int64_t disc_of(std::int64_t m) { return m % 4 == 1 ? m : 4 * m; }

int sign(const Int& a, const Int& b, std::int64_t D) {
  const int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 D.
  const Int lhs = a * a, rhs = b * b * D;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

bool pell_search(std::int64_t m, std::int64_t limit, Unit& out) {
  const std::int64_t D = disc_of(m);
  for (std::int64_t b = 1; b <= limit; ++b) {
    const Int t = Int(b) * b * D;
    for (int n : {-1, 1}) {
      Int a;
      if (perfect_square(t + 4 * n, a) && a > 0) {
        out = {a, Int(b), n};
        return true;
      }
    }
  }
  return false;
}

Unit pell_cf(std::int64_t m) {
  const Int a0 = isqrt_floor(Int(m));
  Int mk = 0, dk = 1, ak = a0;
  Int p_prev = 1, p = a0, q_prev = 0, q = 1;
  for (int iter = 0; iter < 100000; ++iter) {
    const Int n = p * p - Int(m) * q * q;
    if (n == 1 || n == -1) break;
    mk = dk * ak - mk;
    dk = (Int(m) - mk * mk) / dk;
    ak = (a0 + mk) / dk;
    Int pn = ak * p + p_prev, qn = ak * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
  }
  const int n = (p * p - Int(m) * q * q) == 1 ? 1 : -1;
  if (m % 4 != 1) return {2 * p, q, n};
  // Z[sqrt m] unit; O_k may hold its cube root (a + b sqrt m)/2.
  Int r;
  mpz_root(r.get_mpz_t(), Int(2 * p).get_mpz_t(), 3);
  for (Int a = std::max(Int(1), Int(r - 3)); a <= r + 3; ++a) {
    if (a * a * a - 3 * n * a - 2 * p != 0) continue;
    const Int num = a * a - 4 * n;
    if (num % m != 0) continue;
    Int b;
    if (!perfect_square(num / m, b) || b == 0) continue;
    // Check the cube exactly: ((a + b sqrt m)/2)^3 = p + q sqrt m.
    const Int c0 = a * a * a + 3 * a * b * b * m, c1 = 3 * a * a * b + b * b * b * m;
    if (c0 == 8 * p && c1 == 8 * q) return {a, b, n};
  }
  return {2 * p, 2 * q, n};
}

std::int64_t narrow_class_number(std::int64_t D) {
  const std::int64_t s = isqrt_floor(Int(D)).get_si();
  struct F {
    std::int64_t a, b, c;
    bool operator<(const F& o) const { return std::tie(a, b, c) < std::tie(o.a, o.b, o.c); }
  };
  std::set<F> all;
  for (std::int64_t b = 1; b <= s; ++b) {
    if ((b - D) % 2 != 0) continue;
    const std::int64_t ac = (b * b - D) / 4;  // negative
    for (std::int64_t a = 1; a <= -ac; ++a) {
      if ((-ac) % a != 0) continue;
      if (!(2 * a + b > s && 2 * a - b <= s)) continue;
      const std::int64_t c = ac / a;
      all.insert({a, b, c});
      all.insert({-a, b, -c});
    }
  }
  std::set<F> seen;
  std::int64_t cycles = 0;
  for (const F& f0 : all) {
    if (seen.count(f0)) continue;
    ++cycles;
    F f = f0;
    do {
      seen.insert(f);
      const std::int64_t c = f.c, ac = c < 0 ? -c : c;
      const std::int64_t b2 = s - (((s + f.b) % (2 * ac)) + 2 * ac) % (2 * ac);
      const std::int64_t c2 = (b2 * b2 - D) / (4 * c);
      f = {c, b2, c2};
      if (!all.count(f)) throw std::logic_error("cycle left the reduced set");
    } while (!(f.a == f0.a && f.b == f0.b && f.c == f0.c));
  }
  return cycles;
}

std::map<std::int64_t, std::set<std::pair<Int, Int>>> norm_table(std::int64_t m, std::int64_t bound) {
  const std::int64_t D = disc_of(m);
  Unit u = pell_cf(m);
  Int wa = u.a, wb = u.b;
  if (u.norm == -1) {
    wa = (u.a * u.a + u.b * u.b * D) / 2;
    wb = u.a * u.b;
  }
  const double W = (wa.get_d() + wb.get_d() * std::sqrt(double(D))) / 2;
  const std::int64_t B = static_cast<std::int64_t>((W + bound) / std::sqrt(double(D))) + 2;
  std::map<std::int64_t, std::set<std::pair<Int, Int>>> out;
  for (std::int64_t b = -B; b <= B; ++b) {
    const Int t = Int(b) * b * D;
    Int lo = t - 4 * bound > 0 ? isqrt_floor(Int(t - 4 * bound)) : Int(0);
    const Int hi = isqrt_floor(Int(t + 4 * bound));
    for (Int a0 = lo; a0 <= hi; ++a0) {
      for (int sg : {1, -1}) {
        if (a0 == 0 && sg == -1) continue;
        const Int a = sg * a0;
        const Int diff = a * a - t;
        if (diff == 0 || diff % 4 != 0) continue;
        if (mpz_odd_p(Int(a - b * D).get_mpz_t())) continue;
        const Int N = diff / 4;
        if (abs(N) > bound) continue;
        if (sign(a - 2, Int(b), D) < 0) continue;       // x >= 1
        if (sign(wa - a, wb - b, D) <= 0) continue;     // x < W
        out[N.get_si()].insert({a, Int(b)});
      }
    }
  }
  return out;
}

bool primitive(const Int& a, const Int& b, std::int64_t D) {
  const Int delta = D % 2 == 0 ? 0 : 1;
  const Int u = (a - b * delta) / 2;
  Int g;
  mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), b.get_mpz_t());
  return g == 1;
}

Int det(rqf::Matrix A) {
  const std::size_t n = A.size();
  if (n == 0) return 1;
  Int prev = 1;
  int sgn_flip = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && A[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(A[piv], A[k]);
      sgn_flip = -sgn_flip;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
    prev = A[k][k];
  }
  return sgn_flip * A[n - 1][n - 1];
}

std::uint64_t order_mod(std::uint64_t x, std::uint64_t n) {
  x %= n;
  std::uint64_t y = x, k = 1;
  while (y != 1 % n) {
    y = static_cast<std::uint64_t>((static_cast<unsigned __int128>(y) * x) % n);
    ++k;
    if (k > n) throw std::logic_error("not a unit");
  }
  return k;
}

}  // namespace oracle
