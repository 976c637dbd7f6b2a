#include "rqf/arith.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "rqf/errors.hpp"

namespace rqf {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::MTooSmall: return "mTooSmall";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::Ramified: return "Ramified";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::DiscriminantTooLarge: return "DiscriminantTooLarge";
    case ErrorKind::CannotFactor: return "CannotFactor";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::GeneratorSearchFailed: return "GeneratorSearchFailed";
    case ErrorKind::NotSaturated: return "NotSaturated";
    case ErrorKind::NonCyclicPPart: return "NonCyclicPPart";
    case ErrorKind::EmptyPool: return "EmptyPool";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Int ipow(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Int powmod(const Int& base, const Int& exp, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

int valuation(const Int& n, const Int& p) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  Int r;
  return static_cast<int>(mpz_remove(r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int kronecker(const Int& a, const Int& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int invmod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(ErrorKind::NotCoprime, "no inverse modulo " + m.get_str());
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool fits_i64(const Int& n) {
  static const Int lo("-9223372036854775808"), hi("9223372036854775807");
  return n >= lo && n <= hi;
}

std::int64_t to_i64(const Int& n) {
  if (!fits_i64(n)) throw Error(ErrorKind::InvalidArgument, "integer out of 64-bit range");
  if (n.fits_slong_p()) return n.get_si();
  // long is 64-bit on the supported platforms; keep a portable fallback.
  return std::stoll(n.get_str());
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

namespace {

constexpr unsigned kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool mr_round_u64(std::uint64_t n, std::uint64_t d, int s, std::uint64_t a) {
  std::uint64_t x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool mr_round(const Int& n, const Int& d, int s, const Int& a) {
  Int nm1 = n - 1;
  Int x = powmod(a, d, n);
  if (x == 1 || x == nm1) return true;
  for (int i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == nm1) return true;
  }
  return false;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (unsigned b : kBases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned b : kBases) {
    if (!mr_round_u64(n, d, s, b)) return false;
  }
  return true;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
  for (unsigned b : kBases) {
    if (n % b == 0) return false;
  }
  Int d = n - 1;
  int s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  for (unsigned b : kBases) {
    if (!mr_round(n, d, s, Int(b))) return false;
  }
  static const Int deterministic_bound("3317044064679887385961981");
  if (n < deterministic_bound) return true;
  return mpz_probab_prime_p(n.get_mpz_t(), 25) != 0;
}

bool is_squarefree(std::uint64_t n) {
  if (n == 0) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      n /= q;
      if (n % q == 0) return false;
    }
  }
  return true;
}

namespace {

// Pollard-Brent; returns a nontrivial factor or 0 on failure.
Int brent_rho(const Int& n, unsigned long c, unsigned long max_iter) {
  Int y = 2, x, g = 1, q = 1, ys;
  unsigned long r = 1, m = 128, iter = 0;
  auto f = [&](const Int& v) -> Int { return (v * v + c) % n; };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      unsigned long lim = std::min(m, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        y = f(y);
        Int diff = x - y;
        if (diff < 0) diff = -diff;
        q = q * diff % n;
      }
      g = gcd(q, n);
      k += m;
      iter += lim;
      if (iter > max_iter) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      Int diff = x - ys;
      if (diff < 0) diff = -diff;
      g = gcd(diff, n);
    } while (g == 1);
  }
  return g == n ? Int(0) : g;
}

void factor_rec(const Int& n, unsigned max_bits, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  if (is_square(n)) {
    Int r = isqrt(n);
    factor_rec(r, max_bits, out);
    factor_rec(r, max_bits, out);
    return;
  }
  const bool small = mpz_sizeinbase(n.get_mpz_t(), 2) <= max_bits;
  const unsigned long budget = small ? 50'000'000UL : 2'000'000UL;
  for (unsigned long c = 1; c < 40; ++c) {
    Int d = brent_rho(n, c, budget);
    if (d != 0 && d != n) {
      factor_rec(d, max_bits, out);
      factor_rec(n / d, max_bits, out);
      return;
    }
  }
  throw Error(ErrorKind::CannotFactor, "cannot factor " + n.get_str());
}

}  // namespace

Factorization factor(const Int& n_in, unsigned max_bits) {
  if (n_in == 0) throw Error(ErrorKind::InvalidArgument, "factor(0)");
  Int n = n_in < 0 ? Int(-n_in) : n_in;
  std::map<Int, int> out;
  for (unsigned long q = 2; q < 1000; q += (q == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      int e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
        ++e;
      }
      out[Int(q)] += e;
    }
    if (n == 1) break;
  }
  factor_rec(n, max_bits, out);
  return Factorization(out.begin(), out.end());
}

Factorization factor_cached(const Int& n, unsigned max_bits) {
  static std::mutex mu;
  static std::map<Int, Factorization> memo;
  Int key = n < 0 ? Int(-n) : n;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  Factorization f = factor(key, max_bits);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, f);  // a concurrent identical insert is a no-op
  return f;
}

std::optional<Int> sqrt_mod_prime(const Int& a_in, const Int& q) {
  Int a = mod(a_in, q);
  if (a == 0) return Int(0);
  if (q == 2) return a;
  if (kronecker(a, q) != 1) return std::nullopt;
  // Tonelli-Shanks
  Int qm1 = q - 1;
  Int s_odd = qm1;
  int e = 0;
  while (mpz_even_p(s_odd.get_mpz_t())) {
    s_odd >>= 1;
    ++e;
  }
  if (e == 1) return powmod(a, (q + 1) / 4, q);
  Int z = 2;
  while (kronecker(z, q) != -1) ++z;
  Int c = powmod(z, s_odd, q);
  Int x = powmod(a, (s_odd + 1) / 2, q);
  Int t = powmod(a, s_odd, q);
  int m = e;
  while (t != 1) {
    int i = 0;
    Int tt = t;
    while (tt != 1) {
      tt = tt * tt % q;
      ++i;
    }
    Int b = c;
    for (int j = 0; j < m - i - 1; ++j) b = b * b % q;
    x = x * b % q;
    c = b * b % q;
    t = t * c % q;
    m = i;
  }
  return x;
}

Int hensel_lift_sqrt(const Int& a, const Int& root, const Int& q, int t) {
  Int r = root;
  Int modulus = q;
  for (int k = 1; k < t; ++k) {
    Int next = modulus * q;
    // r <- r - (r^2 - a) / (2r)  (mod q^{k+1})
    Int f = mod(r * r - a, next);
    Int inv = invmod(mod(2 * r, next), next);
    r = mod(r - f * inv, next);
    modulus = next;
  }
  return r;
}

std::optional<Int> sqrt_disc_mod_4q(const Int& disc, const Int& q) {
  if (q == 2) {
    for (int b = 0; b < 4; ++b) {
      if ((b - disc) % 2 == 0 && mod(Int(b * b) - disc, Int(8)) == 0) return Int(b);
    }
    return std::nullopt;
  }
  auto r = sqrt_mod_prime(disc, q);
  if (!r) return std::nullopt;
  // b = r (mod q), b = D (mod 2)
  Int b1 = *r;
  if ((b1 - disc) % 2 != 0) b1 += q;
  Int b2 = mod(-b1, 2 * q);
  Int b = std::min(b1, b2);
  return b;
}

}  // namespace rqf
