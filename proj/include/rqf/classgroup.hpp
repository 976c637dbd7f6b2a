#pragma once

// Wide ideal class group of a real quadratic field from the cycles of reduced
// ideals: class number, class of an ideal, orders, principality with
// generator recovery, and the invariant factor decomposition.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rqf/ideal.hpp"

namespace rqf {

/// Largest discriminant accepted by class group computations (default 10^7).
std::int64_t discriminant_cap();
void set_discriminant_cap(std::int64_t cap);

/// Reduced ideal with machine-word coordinates; b lies in (s - 2a, s].
struct ReducedIdeal {
  std::int64_t a;
  std::int64_t b;
};

struct ClassGroupStructure {
  std::int64_t h = 1;
  /// Invariant factors > 1, descending, each divisible by the next.
  std::vector<std::int64_t> cyclic_orders;
  /// Prime ideals generating the corresponding cyclic factors.
  std::vector<Ideal> generators;

  /// Nontrivial p-parts of the invariant factors, descending.
  std::vector<std::int64_t> p_part(std::int64_t p) const;
};

class ClassGroup {
 public:
  /// Enumerates every reduced ideal and partitions them into rho-cycles.
  /// Throws DiscriminantTooLarge when D exceeds the cap.
  explicit ClassGroup(const QuadraticField& k);

  std::int64_t disc() const { return disc_; }
  /// Wide class number = number of cycles.
  std::int64_t h() const { return static_cast<std::int64_t>(cycles_.size()); }
  const std::vector<std::vector<ReducedIdeal>>& cycles() const { return cycles_; }
  /// Index 0 is the principal cycle, starting with O_k.
  const std::vector<ReducedIdeal>& principal_cycle() const { return cycles_[0]; }

  /// Cycle index of the class of I.
  int class_of(const Ideal& I) const;
  /// Cycle index and position of a reduced ideal.
  std::pair<int, std::size_t> locate(const Ideal& reduced) const;
  bool is_principal(const Ideal& I) const { return class_of(I) == 0; }
  /// Class of the product of two classes.
  int mul(int c1, int c2) const;
  int inverse(int c) const;
  int pow(int c, std::int64_t e) const;
  std::int64_t order(int c) const;
  Ideal representative(int c) const;

  /// Generator of factor * ideal when it is principal (up to sign and units).
  std::optional<QuadInt> generator(const TrackedIdeal& t) const;

  /// Unit obtained as the product of the rho multipliers around the
  /// principal cycle (a power of the fundamental unit up to sign).
  QuadInt cycle_unit() const;

  /// Invariant factors and generator ideals; computed on first use.
  const ClassGroupStructure& structure() const;
  /// Coordinates of class c with respect to structure().generators.
  const std::vector<std::int64_t>& dlog(int c) const;
  /// Prime ideal in class c of norm not equal to `exclude` (0 for none).
  Ideal prime_in_class(int c, std::int64_t exclude = 0) const;

 private:
  void build_structure() const;
  void build_generators() const;

  std::int64_t disc_;
  std::int64_t s_;
  std::vector<std::vector<ReducedIdeal>> cycles_;
  std::unordered_map<std::uint64_t, std::pair<int, std::uint32_t>> index_;

  mutable std::once_flag generators_once_;
  /// S_i with (S_i) = i-th ideal of the principal cycle.
  mutable std::vector<QuadInt> suffix_;

  mutable std::once_flag structure_once_;
  mutable ClassGroupStructure structure_;
  mutable std::vector<std::vector<std::int64_t>> dlog_;
};

/// Free-function interface over the cached field data.
ClassGroupStructure class_group_structure(const QuadraticField& k);
std::int64_t ideal_class_order(const QuadraticField& k, const Ideal& l);
/// Generator of I normalized to a positive element in [1, eps), if I is principal.
std::optional<QuadInt> is_principal_with_generator(const QuadraticField& k, const Ideal& I);

/// Wide class number only, without building the field cache.
std::int64_t class_number(std::int64_t disc);

}  // namespace rqf
