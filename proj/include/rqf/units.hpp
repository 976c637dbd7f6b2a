#pragma once

// Fundamental unit, p-units, and canonical representatives modulo units.

#include <cstdint>

#include "rqf/ideal.hpp"

namespace rqf {

struct UnitRecord {
  /// Smallest unit > 1.
  QuadInt eps;
  int norm_eps = 1;
  /// log(eps), diagnostic only.
  double regulator_log = 0.0;
};

/// Cached on the field.
const UnitRecord& fundamental_unit(const QuadraticField& k);
/// Direct computation from the continued fraction of (D mod 2 + sqrt D)/2.
UnitRecord compute_fundamental_unit(const QuadraticField& k);

QuadInt unit_inverse(const QuadInt& u);

/// Positive associate x * (+-eps^j) with 1 <= x < eps.
QuadInt canonical_associate(const QuadraticField& k, const QuadInt& x);
/// Positive associate with the same norm, in [1, eps) when N(eps) = 1 and in
/// [1, eps^2) when N(eps) = -1.
QuadInt canonical_norm_representative(const QuadraticField& k, const QuadInt& x);

struct PUnitRecord {
  /// Canonical generator of prime^h0.
  QuadInt eta;
  std::int64_t h0 = 1;
  /// The prime above p on which the first p-adic embedding has positive valuation.
  Ideal prime;
};

/// Prime above the split prime p where the first embedding vanishes.
Ideal embedding_prime(const QuadraticField& k, std::int64_t p);
/// Throws NotSplit or Ramified.
PUnitRecord p_unit(const QuadraticField& k, std::int64_t p);

}  // namespace rqf
