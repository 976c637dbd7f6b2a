#pragma once

// Ray class group of modulus p^t (finite part only) from generators and
// relations, and the torsion group T_k read off its invariant factors.

#include <string>
#include <vector>

#include "rqf/snf.hpp"
#include "rqf/units.hpp"

namespace rqf {

/// Multiplicative group (O_k / p^t)^x split into cyclic coordinates.
/// Split p: (Z/p^t)^x twice, each as Z/(p-1) x Z/p^(t-1).
/// Inert p: F_{p^2}^x x Z/p^(t-1) x Z/p^(t-1).
class ResidueGroup {
 public:
  ResidueGroup(const QuadraticField& k, std::int64_t p, int t);

  bool split() const { return split_; }
  const std::vector<Int>& orders() const { return orders_; }
  Int size() const;
  /// Coordinates of an element prime to p.
  std::vector<Int> coordinates(const QuadInt& x) const;
  /// Multiplicative order of x in the group, by direct powering.
  Int element_order(const QuadInt& x) const;
  /// Whether -1 is a power of x.
  bool minus_one_is_power(const QuadInt& x) const;

 private:
  struct Res {
    Int u;
    Int v;  // u + v sqrt D
  };
  Res reduce(const QuadInt& x, const Int& mod) const;
  Res mul(const Res& x, const Res& y, const Int& mod) const;
  Res pow(Res x, Int e, const Int& mod) const;
  bool is_one(const Res& x) const;
  /// log(y)/p mod p^(t-1) for y = 1 (mod p), returned as (u, v).
  std::pair<Int, Int> log_over_p(const Res& y) const;
  std::int64_t residue_index(const Res& x) const;

  std::int64_t disc_;
  std::int64_t p_;
  int t_;
  bool split_;
  Int pt_;
  Int r1_;
  std::vector<Int> orders_;
  // Discrete logarithm tables modulo p: keyed by u (split) or u + p*v (inert).
  std::vector<std::int64_t> index_;
};

struct AbelianPresentation {
  std::vector<std::string> labels;
  Matrix relations;  ///< rows are relations, columns follow labels
  /// Invariant factors > 1, descending.
  std::vector<Int> divisors;
  /// h * #(O/p^t)^x / #(image of units), computed without the SNF.
  Int expected_order;
};

/// Throws Ramified when p | D; t >= 2.
AbelianPresentation ray_class_structure(const QuadraticField& k, std::int64_t p, int t);

struct TorsionStructure {
  int rank = 0;
  /// p-parts of the invariant factors after dropping the largest one, descending.
  std::vector<Int> p_part_orders;
  /// Precision at which the structure agreed with precision t + 1.
  int saturated_at = 0;
  /// Invariant factors of the ray class group at saturated_at.
  std::vector<Int> divisors;
};

/// p-parts after removing the largest invariant factor.
std::vector<Int> torsion_from_divisors(const std::vector<Int>& divisors, std::int64_t p);

/// Tries t, then 16, then 32; throws NotSaturated if no step stabilizes.
TorsionStructure torsion_structure(const QuadraticField& k, std::int64_t p, int t = 9);

}  // namespace rqf
