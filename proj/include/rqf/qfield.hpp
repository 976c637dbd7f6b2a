#pragma once

// Exact arithmetic in a real quadratic field k = Q(sqrt m): field context,
// algebraic integers, continued fractions and discriminant scanning.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rqf/arith.hpp"

namespace rqf {

class ClassGroup;
struct UnitRecord;

/// Algebraic integer (a + b*sqrt(D))/2 with a = b*D (mod 2).
struct QuadInt {
  Int a;
  Int b;
  std::int64_t disc = 0;

  bool operator==(const QuadInt& o) const = default;
};

/// Field element (x + y*sqrt(D))/z with z > 0 and gcd(x, y, z) = 1.
struct QuadFrac {
  Int x;
  Int y;
  Int z = 1;
  std::int64_t disc = 0;
};

class QuadraticField {
 public:
  /// Throws NotSquarefree or MTooSmall.
  explicit QuadraticField(std::int64_t m);

  std::int64_t m() const { return m_; }
  std::int64_t disc() const { return disc_; }
  /// True iff m = 1 (mod 4): integral basis (1, (1 + sqrt m)/2).
  bool half_basis() const { return half_basis_; }
  /// floor(sqrt(D)).
  const Int& sqrt_disc_floor() const { return sqrt_floor_; }

  QuadInt make(const Int& a, const Int& b) const;
  /// Element u + v*sqrt(m).
  QuadInt from_sqrt_m(const Int& u, const Int& v) const;
  QuadInt one() const { return make(2, 0); }

  /// Fundamental unit; computed on first use, then shared read-only.
  const UnitRecord& unit() const;
  /// Reduced-ideal cycles and class group; computed on first use.
  const ClassGroup& class_group() const;

 private:
  struct Cache;

  std::int64_t m_;
  std::int64_t disc_;
  bool half_basis_;
  Int sqrt_floor_;
  std::shared_ptr<Cache> cache_;

  friend struct FieldCacheAccess;
};

QuadraticField make_field(std::int64_t m);

/// Fundamental discriminants of real quadratic fields in [lo, hi], ascending.
std::vector<std::int64_t> fundamental_discriminants(std::int64_t lo, std::int64_t hi);
bool is_fundamental_discriminant(std::int64_t d);
/// Squarefree radicand m with Q(sqrt m) of discriminant d.
std::int64_t radicand_of(std::int64_t d);

// Element arithmetic. Operands must share a discriminant (FieldMismatch).
QuadInt operator*(const QuadInt& x, const QuadInt& y);
QuadInt operator+(const QuadInt& x, const QuadInt& y);
QuadInt operator-(const QuadInt& x, const QuadInt& y);
QuadInt operator-(const QuadInt& x);
QuadInt conj(const QuadInt& x);
Int norm(const QuadInt& x);
Int trace(const QuadInt& x);
QuadInt pow(const QuadInt& x, unsigned long e);
QuadInt scale(const QuadInt& x, const Int& n);
/// Largest rational integer dividing x in O_k.
Int content(const QuadInt& x);
/// Exact division by a rational integer; throws if not integral.
QuadInt divexact(const QuadInt& x, const Int& n);

QuadFrac to_frac(const QuadInt& x);
QuadFrac operator*(const QuadFrac& x, const QuadFrac& y);
QuadFrac divide(const QuadFrac& x, const Int& n);
/// Converts to an algebraic integer; throws if x is not integral.
QuadInt to_int(const QuadFrac& x);

/// Sign of u + v*sqrt(D) computed exactly.
int sign_of(const Int& u, const Int& v, std::int64_t disc);
/// log|x| under sqrt(D) > 0; x must be nonzero.
double log_abs(const QuadInt& x);
/// x >= 1 under the real embedding (exact).
bool real_ge_one(const QuadInt& x);
/// Compares the real embeddings of x and y exactly (-1, 0, 1).
int compare_real(const QuadInt& x, const QuadInt& y);

/// "u + v*sqrt(m)" with rational coordinates printed as fractions.
std::string to_string(const QuadInt& x, const QuadraticField& k);
/// Rational and sqrt(m) coordinates as reduced fraction strings.
std::pair<std::string, std::string> sqrt_m_coords(const QuadInt& x, const QuadraticField& k);

/// True iff (D|p) = +1. Throws Ramified when p | D.
bool is_split(const QuadraticField& k, const Int& p);

/// Continued fraction of (P0 + sqrt D)/Q0 up to the end of its first period.
struct CFExpansion {
  Int seed_p;
  Int seed_q;
  std::int64_t disc = 0;
  std::vector<Int> partial_quotients;
  /// (P_i, Q_i) for every complete quotient visited, starting with the seed.
  std::vector<std::pair<Int, Int>> states;
  /// Index where the periodic part starts.
  std::size_t preperiod = 0;
  std::size_t period = 0;
};

/// Expansion of omega = (D mod 2 + sqrt D)/2, stopping once a state repeats.
CFExpansion expand_omega(const QuadraticField& k);
CFExpansion expand_quadratic_irrational(std::int64_t disc, const Int& p0, const Int& q0);

}  // namespace rqf
