#pragma once

// Rational-integer helpers shared by every module: bignum aliases, primality,
// factorization, square roots modulo prime powers.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace rqf {

using Int = mpz_class;

Int isqrt(const Int& n);
bool is_square(const Int& n);
Int ipow(const Int& base, unsigned long exp);
Int powmod(const Int& base, const Int& exp, const Int& mod);
/// Least nonnegative residue.
Int mod(const Int& a, const Int& m);
/// v_p(n); n must be nonzero.
int valuation(const Int& n, const Int& p);
int valuation(std::int64_t n, std::int64_t p);
int kronecker(const Int& a, const Int& n);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
/// Inverse of a modulo m; a must be a unit.
Int invmod(const Int& a, const Int& m);
/// Floor division for signed operands.
Int floor_div(const Int& a, const Int& b);

std::int64_t to_i64(const Int& n);
bool fits_i64(const Int& n);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);
/// Deterministic Miller-Rabin (bases 2..41) below 3.3e24; beyond that the
/// same bases plus GMP's randomized rounds.
bool is_prime(const Int& n);

bool is_squarefree(std::uint64_t n);

using Factorization = std::vector<std::pair<Int, int>>;

/// Factor |n| (n != 0) into ascending primes. Trial division followed by
/// Pollard-Brent rho; throws CannotFactor when a cofactor exceeds
/// `max_bits` and resists rho within the iteration budget.
Factorization factor(const Int& n, unsigned max_bits = 100);

/// Memoized variant, safe for concurrent callers.
Factorization factor_cached(const Int& n, unsigned max_bits = 100);

/// Square root of a modulo an odd prime q, if a is a square.
std::optional<Int> sqrt_mod_prime(const Int& a, const Int& q);

/// Hensel-lift a simple root r of x^2 = a (mod q) to modulus q^t.
Int hensel_lift_sqrt(const Int& a, const Int& root, const Int& q, int t);

/// b with b^2 = D (mod 4q), b = D (mod 2), 0 <= b < 2q, and b the smaller of
/// the two choices; nullopt when q is inert.
std::optional<Int> sqrt_disc_mod_4q(const Int& disc, const Int& q);

}  // namespace rqf
