#pragma once

// The two p-adic embeddings of k at a split prime p, truncated at p^t, and
// the Fermat-quotient invariant delta_p.

#include <cstdint>

#include "rqf/units.hpp"

namespace rqf {

struct PadicEmbeddingPair {
  std::int64_t p = 0;
  int t = 0;
  Int modulus;  ///< p^t
  Int r1;       ///< sqrt D mod p^t, smallest positive residue mod p
  Int r2;       ///< p^t - r1

  /// (a + b*r_i)/2 mod p^t.
  Int phi1(const QuadInt& x) const;
  Int phi2(const QuadInt& x) const;
};

/// Throws NotSplit (or Ramified when p | D). t >= 2.
PadicEmbeddingPair split_embeddings(const QuadraticField& k, std::int64_t p, int t);

struct FermatQuotient {
  /// Exact value, or the lower bound t - 1 when saturated.
  int delta = 0;
  bool saturated = false;
  int precision = 0;
};

/// delta of a residue u prime to p: v_p(u^(p-1) - 1) - 1 at precision p^t.
FermatQuotient residue_delta(const Int& u, std::int64_t p, int t);
/// Same quantity read from the multiplicative order of u^(p-1) modulo p^t.
FermatQuotient residue_delta_by_order(const Int& u, std::int64_t p, int t);

/// min over both embeddings. Throws NotCoprime when p | N(x).
FermatQuotient fermat_quotient(const QuadInt& x, const PadicEmbeddingPair& pair);
FermatQuotient fermat_quotient_by_order(const QuadInt& x, const PadicEmbeddingPair& pair);
/// delta of eta at the embedding where it is a unit (the conjugate of its prime).
FermatQuotient fermat_quotient_counit(const PUnitRecord& pu, const PadicEmbeddingPair& pair);

constexpr int kDefaultPrecision = 9;
constexpr int kMaxPrecision = 64;

/// Exact delta, doubling the precision from t on saturation up to 64.
/// Throws PrecisionExhausted beyond that.
int delta_auto(const QuadraticField& k, const QuadInt& x, std::int64_t p, int t = kDefaultPrecision);
int delta_counit_auto(const QuadraticField& k, const PUnitRecord& pu, std::int64_t p,
                      int t = kDefaultPrecision);

}  // namespace rqf
