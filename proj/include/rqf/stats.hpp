#pragma once

// Statistical experiments over split primes l = +-1 (mod p^(n+1)): class
// orders of the primes above l, delta_p of l-units, and random products of a
// fixed prime pool.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rqf/padic.hpp"

namespace rqf {

/// SplitMix64 generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform on {0, ..., n-1} by rejection.
  std::uint64_t uniform(std::uint64_t n);

 private:
  std::uint64_t state_;
};

struct ScanSpec {
  std::int64_t p = 3;
  int n = 0;
  /// Exclusive upper bound on l.
  std::uint64_t BL = 0;
  /// Inclusive lower bound on l; splitting [lo, BL) into ranges partitions the stream.
  std::uint64_t BL_low = 0;
};

/// Primes BL_low <= l < BL with l = -1 then l = +1 (mod 2p^(n+1)) and (m|l) = 1,
/// ascending within each pass.
void for_each_split_prime(const QuadraticField& k, const ScanSpec& spec,
                          const std::function<void(std::uint64_t)>& fn);
std::vector<std::uint64_t> split_prime_stream(const QuadraticField& k, const ScanSpec& spec);

struct SurveyHistogram {
  std::string kind;  ///< "orders", "delta" or "relations"
  std::vector<std::string> labels;
  std::vector<std::uint64_t> counts;
  std::vector<double> proportions;
  /// Empty when no reference distribution applies.
  std::vector<double> expected;
  std::uint64_t sample_size = 0;
  /// Run parameters echoed into every artifact.
  std::map<std::string, std::string> params;
  /// Extra tallies (e.g. Nn, Npx, representative-sensitive samples).
  std::map<std::string, std::uint64_t> extra;

  void finalize();
  std::string to_json() const;
  std::string to_csv() const;
};

/// Bucketwise sum of two histograms of the same shape.
SurveyHistogram merge(const SurveyHistogram& a, const SurveyHistogram& b);

/// Cyclic p-part of order p^a: [1/p^a, (p-1)/p^a, p(p-1)/p^a, ...].
std::vector<double> expected_order_distribution(std::int64_t p, int a);
/// [(p-1)/p^(j+1)] for j < buckets, then the tail p^-buckets.
std::vector<double> expected_delta_distribution(std::int64_t p, int buckets);

/// Prime above l on which the first embedding sqrt D -> r (smallest root mod l) vanishes.
Ideal ell_prime(const QuadraticField& k, std::uint64_t l);

/// Orders of the classes of the primes above l, by p-part of the order.
SurveyHistogram order_survey(const QuadraticField& k, const ScanSpec& spec, unsigned jobs = 1);
/// delta_p of the canonical generator of l^r for the l whose prime has class order r.
/// Buckets 0..4 and >= 5.
SurveyHistogram ell_unit_delta_survey(const QuadraticField& k, const ScanSpec& spec, std::int64_t r,
                                      unsigned jobs = 1);

/// Both surveys in one pass over the primes; delta histograms keyed by r.
struct EllSurvey {
  SurveyHistogram orders;
  std::map<std::int64_t, SurveyHistogram> deltas;
};
EllSurvey ell_survey(const QuadraticField& k, const ScanSpec& spec, const std::vector<std::int64_t>& rs,
                     unsigned jobs = 1);

/// Random products prod l_j^e_j, e_j uniform in {0,1,2}; tallies delta of
/// every primitive solution (C0, C1, C>=2) and counts products without any
/// integral solution (Npx). Throws EmptyPool.
SurveyHistogram relation_survey(const QuadraticField& k, std::int64_t p, const std::vector<std::uint64_t>& pool,
                                std::uint64_t trials, std::uint64_t seed);

/// Primes l < bound with l = 1 (mod 2p^2) split in k, in descending order.
std::vector<std::uint64_t> relation_pool(const QuadraticField& k, std::int64_t p, std::uint64_t bound);

}  // namespace rqf
