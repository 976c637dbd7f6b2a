#pragma once

// Per-field classification at a split prime p: class and normic obstructions,
// p-rationality, #T_k, and the ambiguous class number in the cyclotomic layers.

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rqf/padic.hpp"

namespace rqf {

struct InvariantReport {
  std::int64_t m = 0;
  std::int64_t D = 0;
  std::int64_t p = 0;
  std::int64_t h = 0;
  int vp_h = 0;
  std::int64_t h0 = 0;
  int vp_h0 = 0;
  int delta_eps = 0;
  int delta_eta = 0;
  bool pb_classes = false;
  bool pb_normique = false;
  bool sufficient = false;
  /// Present only when p splits.
  std::optional<bool> log_trivial;
  bool p_rational = false;
  Int torsion_order;
  Int regulator_order;
  QuadInt eps;
  QuadInt eta;
};

/// Throws NotSplit / Ramified; PrecisionExhausted if delta stays saturated at t = 64.
InvariantReport analyze(const QuadraticField& k, std::int64_t p, int t = kDefaultPrecision);

/// p^{v_p(h)} * p^{min(delta_p(eps), n)}.
Int ambiguous_class_number(const QuadraticField& k, std::int64_t p, int n);

struct ScanFilters {
  int vh_min = 0;
  int zmax_exp = 0;
  bool require_split = true;
};

struct ScanError {
  std::int64_t D;
  std::string kind;
  std::string message;
};

/// Reports for fundamental discriminants in [bD, BD] passing the filters,
/// ascending in D. Work is split across `jobs` threads; per-field errors go to
/// `errors` (if given) and never abort the scan.
std::vector<InvariantReport> scan(std::int64_t bD, std::int64_t BD, std::int64_t p,
                                  const ScanFilters& filters, unsigned jobs = 1,
                                  std::vector<ScanError>* errors = nullptr);

std::string to_json(const InvariantReport& r);
std::string csv_header();
std::string to_csv(const InvariantReport& r);

}  // namespace rqf
