#pragma once

// Integers of k with a prescribed norm, by enumerating the ideals of that
// norm and recovering generators of the principal ones.

#include <vector>

#include "rqf/classgroup.hpp"
#include "rqf/units.hpp"

namespace rqf {

struct NormSolutionSet {
  Int N;
  bool primitive_only = false;
  /// One canonical representative per class modulo units of norm 1, each
  /// positive and in [1, eps) or [1, eps^2) (see canonical_norm_representative).
  std::vector<QuadInt> solutions;
};

/// Every x in O_k with N(x) = N, up to multiplication by units of norm 1 and
/// sign. With primitive_only, x must not be divisible by any rational prime.
/// Throws InvalidArgument for N = 0 and CannotFactor beyond the effort bound.
NormSolutionSet norm_solutions(const QuadraticField& k, const Int& N, bool primitive_only);

/// True iff some x in O_k has N(x) = N; stops at the first witness.
bool has_norm_solution(const QuadraticField& k, const Int& N);

/// True iff no rational prime divides x in O_k.
bool is_primitive(const QuadInt& x);

}  // namespace rqf
