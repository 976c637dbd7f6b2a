#include "rqf/stats.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "rqf/classgroup.hpp"
#include "rqf/errors.hpp"
#include "rqf/norm_solver.hpp"

namespace rqf {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::uniform(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    const std::uint64_t x = next();
    if (x < limit) return x % n;
  }
}

namespace {

// Jacobi symbol (a|n) for odd n > 0.
int jacobi(std::int64_t a, std::uint64_t n) {
  std::uint64_t x = a >= 0 ? static_cast<std::uint64_t>(a) % n
                           : (n - (static_cast<std::uint64_t>(-(a + 1)) % n) - 1) % n;
  int s = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      if ((n & 7) == 3 || (n & 7) == 5) s = -s;
    }
    std::swap(x, n);
    if ((x & 3) == 3 && (n & 3) == 3) s = -s;
    x %= n;
  }
  return n == 1 ? s : 0;
}

std::uint64_t modulus_of(const ScanSpec& spec) {
  if (spec.p < 2 || spec.n < 0) throw Error(ErrorKind::InvalidArgument, "bad scan parameters");
  std::uint64_t M = 1;
  for (int i = 0; i <= spec.n; ++i) {
    if (M > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(spec.p))
      throw Error(ErrorKind::InvalidArgument, "p^(n+1) too large");
    M *= static_cast<std::uint64_t>(spec.p);
  }
  return M;
}

// Candidates of one pass: base + 2M*j for first <= j <= count.
struct Pass {
  std::int64_t base;
  std::uint64_t first;
  std::uint64_t count;
};

std::vector<Pass> passes(const ScanSpec& spec, std::uint64_t M) {
  std::vector<Pass> out;
  for (std::int64_t t : {-1, 0}) {
    const std::int64_t base = 2 * t + 1;
    const std::uint64_t step = 2 * M;
    // Largest j with base + step*j < BL.
    std::uint64_t cnt = 0;
    if (spec.BL > 0) {
      const std::uint64_t lim = static_cast<std::uint64_t>(static_cast<std::int64_t>(spec.BL) - 1 - base);
      cnt = lim / step;
    }
    // Smallest j >= 1 with base + step*j >= BL_low.
    std::uint64_t first = 1;
    if (static_cast<std::int64_t>(spec.BL_low) > base + static_cast<std::int64_t>(step)) {
      const std::uint64_t need = static_cast<std::uint64_t>(static_cast<std::int64_t>(spec.BL_low) - base);
      first = (need + step - 1) / step;
    }
    out.push_back({base, first, cnt});
  }
  return out;
}

bool keep(std::int64_t m, std::uint64_t l) { return jacobi(m, l) == 1 && is_prime_u64(l); }

std::string label_of_power(std::int64_t p, int j) {
  Int v = ipow(Int(static_cast<long>(p)), static_cast<unsigned long>(j));
  return v.get_str();
}

SurveyHistogram delta_histogram(std::int64_t p) {
  SurveyHistogram h;
  h.kind = "delta";
  for (int j = 0; j < 5; ++j) h.labels.push_back(std::to_string(j));
  h.labels.push_back(">=5");
  h.counts.assign(6, 0);
  h.expected = expected_delta_distribution(p, 5);
  h.extra["representative_sensitive"] = 0;
  return h;
}

// Per-worker accumulators for the l scan.
struct EllAccumulator {
  std::vector<std::uint64_t> order_counts;  // by v_p of the class order
  std::map<std::int64_t, std::vector<std::uint64_t>> delta_counts;
  std::map<std::int64_t, std::uint64_t> sensitive;
};

}  // namespace

void for_each_split_prime(const QuadraticField& k, const ScanSpec& spec,
                          const std::function<void(std::uint64_t)>& fn) {
  const std::uint64_t M = modulus_of(spec);
  for (const Pass& ps : passes(spec, M)) {
    for (std::uint64_t j = ps.first; j <= ps.count; ++j) {
      const std::uint64_t l = static_cast<std::uint64_t>(ps.base + static_cast<std::int64_t>(2 * M * j));
      if (keep(k.m(), l)) fn(l);
    }
  }
}

std::vector<std::uint64_t> split_prime_stream(const QuadraticField& k, const ScanSpec& spec) {
  std::vector<std::uint64_t> out;
  for_each_split_prime(k, spec, [&](std::uint64_t l) { out.push_back(l); });
  return out;
}

void SurveyHistogram::finalize() {
  sample_size = 0;
  for (auto c : counts) sample_size += c;
  proportions.assign(counts.size(), 0.0);
  if (sample_size == 0) return;
  for (std::size_t i = 0; i < counts.size(); ++i)
    proportions[i] = static_cast<double>(counts[i]) / static_cast<double>(sample_size);
}

std::string SurveyHistogram::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = kind;
  for (const auto& [key, v] : params) j[key] = v;
  j["sample_size"] = sample_size;
  j["labels"] = labels;
  j["counts"] = counts;
  j["proportions"] = proportions;
  if (expected.empty())
    j["expected"] = nullptr;
  else
    j["expected"] = expected;
  for (const auto& [key, v] : extra) j[key] = v;
  return j.dump();
}

std::string SurveyHistogram::to_csv() const {
  std::ostringstream os;
  os.precision(10);
  os << "label,count,proportion,expected\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    os << labels[i] << ',' << counts[i] << ',' << (i < proportions.size() ? proportions[i] : 0.0) << ',';
    if (i < expected.size()) os << expected[i];
    os << '\n';
  }
  return os.str();
}

SurveyHistogram merge(const SurveyHistogram& a, const SurveyHistogram& b) {
  if (a.kind != b.kind || a.labels != b.labels)
    throw Error(ErrorKind::InvalidArgument, "histograms have different shapes");
  SurveyHistogram out = a;
  for (std::size_t i = 0; i < out.counts.size(); ++i) out.counts[i] += b.counts[i];
  for (const auto& [key, v] : b.extra) out.extra[key] += v;
  out.finalize();
  return out;
}

std::vector<double> expected_order_distribution(std::int64_t p, int a) {
  std::vector<double> out;
  const double pa = std::pow(static_cast<double>(p), a);
  out.push_back(1.0 / pa);
  for (int j = 1; j <= a; ++j)
    out.push_back(static_cast<double>(p - 1) * std::pow(static_cast<double>(p), j - 1) / pa);
  return out;
}

std::vector<double> expected_delta_distribution(std::int64_t p, int buckets) {
  std::vector<double> out;
  const double q = static_cast<double>(p);
  for (int j = 0; j < buckets; ++j) out.push_back((q - 1) / std::pow(q, j + 1));
  out.push_back(std::pow(q, -buckets));
  return out;
}

Ideal ell_prime(const QuadraticField& k, std::uint64_t l) {
  return embedding_prime(k, static_cast<std::int64_t>(l));
}

EllSurvey ell_survey(const QuadraticField& k, const ScanSpec& spec, const std::vector<std::int64_t>& rs,
                     unsigned jobs) {
  const std::uint64_t M = modulus_of(spec);
  if (spec.BL < 2 * M) throw Error(ErrorKind::InvalidArgument, "BL must be at least 2p^(n+1)");
  const ClassGroup& cg = k.class_group();
  const auto ppart = cg.structure().p_part(spec.p);
  const bool cyclic = ppart.size() <= 1;
  const int a = ppart.empty() ? 0 : valuation(ppart[0], spec.p);
  const int delta_eps = delta_auto(k, k.unit().eps, spec.p);
  const PadicEmbeddingPair pair = split_embeddings(k, spec.p, kDefaultPrecision);

  // Flatten both passes into one index space of blocks.
  const auto ps = passes(spec, M);
  constexpr std::uint64_t kBlock = 1 << 14;
  std::vector<std::pair<int, std::uint64_t>> blocks;  // (pass, first j)
  for (int pi = 0; pi < 2; ++pi)
    for (std::uint64_t j = ps[pi].first; j <= ps[pi].count; j += kBlock) blocks.emplace_back(pi, j);

  jobs = std::max(1u, jobs);
  std::vector<EllAccumulator> acc(jobs);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(jobs);

  auto worker = [&](unsigned w) {
    EllAccumulator& A = acc[w];
    A.order_counts.assign(static_cast<std::size_t>(a) + 1, 0);
    for (std::int64_t r : rs) {
      A.delta_counts[r].assign(6, 0);
      A.sensitive[r] = 0;
    }
    try {
      for (std::size_t bi; (bi = next.fetch_add(1)) < blocks.size();) {
        const auto [pi, j0] = blocks[bi];
        const std::uint64_t j1 = std::min(ps[pi].count, j0 + kBlock - 1);
        for (std::uint64_t j = j0; j <= j1; ++j) {
          const std::uint64_t l = static_cast<std::uint64_t>(ps[pi].base + static_cast<std::int64_t>(2 * M * j));
          if (!keep(k.m(), l)) continue;
          const Ideal P = ell_prime(k, l);
          const std::int64_t r = cg.order(cg.class_of(P));
          const int vr = valuation(r, spec.p);
          if (vr > a) throw Error(ErrorKind::InvalidArgument, "class order exceeds p-part exponent");
          A.order_counts[static_cast<std::size_t>(vr)]++;
          auto it = A.delta_counts.find(r);
          if (it == A.delta_counts.end()) continue;
          auto g = cg.generator(tracked_pow(track(P), static_cast<unsigned long>(r)));
          if (!g) throw Error(ErrorKind::GeneratorSearchFailed, "l^r is not principal");
          const QuadInt eta = canonical_norm_representative(k, *g);
          const Int lr = ipow(Int(static_cast<unsigned long>(l)), static_cast<unsigned long>(r));
          if (abs(norm(eta)) != lr) throw Error(ErrorKind::GeneratorSearchFailed, "l-unit has wrong norm");
          const FermatQuotient fq = fermat_quotient(eta, pair);
          const int d = fq.saturated ? 5 : std::min(fq.delta, 5);
          it->second[static_cast<std::size_t>(d)]++;
          if (fq.saturated || fq.delta >= delta_eps) A.sensitive[r]++;
        }
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < jobs; ++i) pool.emplace_back(worker, i);
  worker(0);
  for (auto& th : pool) th.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  std::map<std::string, std::string> params{{"m", std::to_string(k.m())},
                                            {"p", std::to_string(spec.p)},
                                            {"n", std::to_string(spec.n)},
                                            {"BL", std::to_string(spec.BL)}};
  if (spec.BL_low > 0) params["BL_low"] = std::to_string(spec.BL_low);
  EllSurvey out;
  out.orders.kind = "orders";
  out.orders.params = params;
  for (int j = 0; j <= a; ++j) out.orders.labels.push_back(label_of_power(spec.p, j));
  out.orders.counts.assign(static_cast<std::size_t>(a) + 1, 0);
  if (cyclic) out.orders.expected = expected_order_distribution(spec.p, a);
  else out.orders.extra["non_cyclic_p_part"] = 1;
  for (const auto& A : acc)
    for (std::size_t i = 0; i < A.order_counts.size(); ++i) out.orders.counts[i] += A.order_counts[i];
  out.orders.finalize();

  for (std::int64_t r : rs) {
    SurveyHistogram h = delta_histogram(spec.p);
    h.params = params;
    h.params["r"] = std::to_string(r);
    for (const auto& A : acc) {
      const auto& c = A.delta_counts.at(r);
      for (std::size_t i = 0; i < 6; ++i) h.counts[i] += c[i];
      h.extra["representative_sensitive"] += A.sensitive.at(r);
    }
    h.finalize();
    out.deltas.emplace(r, std::move(h));
  }
  return out;
}

SurveyHistogram order_survey(const QuadraticField& k, const ScanSpec& spec, unsigned jobs) {
  return ell_survey(k, spec, {}, jobs).orders;
}

SurveyHistogram ell_unit_delta_survey(const QuadraticField& k, const ScanSpec& spec, std::int64_t r,
                                      unsigned jobs) {
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "r must be positive");
  return ell_survey(k, spec, {r}, jobs).deltas.at(r);
}

std::vector<std::uint64_t> relation_pool(const QuadraticField& k, std::int64_t p, std::uint64_t bound) {
  const std::uint64_t step = 2 * static_cast<std::uint64_t>(p * p);
  std::vector<std::uint64_t> out;
  for (std::uint64_t l = 1 + step; l < bound; l += step)
    if (keep(k.m(), l)) out.push_back(l);
  std::reverse(out.begin(), out.end());
  return out;
}

SurveyHistogram relation_survey(const QuadraticField& k, std::int64_t p, const std::vector<std::uint64_t>& pool,
                                std::uint64_t trials, std::uint64_t seed) {
  if (pool.empty()) throw Error(ErrorKind::EmptyPool, "prime pool is empty");
  for (std::uint64_t l : pool)
    if (!is_prime_u64(l) || jacobi(k.disc(), l) != 1)
      throw Error(ErrorKind::NotSplit, std::to_string(l) + " is not a split prime");
  const PadicEmbeddingPair pair = split_embeddings(k, p, kDefaultPrecision);

  SurveyHistogram h;
  h.kind = "relations";
  h.labels = {"0", "1", ">=2"};
  h.counts.assign(3, 0);
  h.params = {{"m", std::to_string(k.m())},
              {"p", std::to_string(p)},
              {"trials", std::to_string(trials)},
              {"seed", std::to_string(seed)}};
  std::string pl;
  for (std::uint64_t l : pool) pl += (pl.empty() ? "" : " ") + std::to_string(l);
  h.params["pool"] = pl;

  SplitMix64 rng(seed);
  std::uint64_t npx = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Int N = 1;
    for (std::uint64_t l : pool) {
      const std::uint64_t e = rng.uniform(3);
      for (std::uint64_t i = 0; i < e; ++i) N *= static_cast<unsigned long>(l);
    }
    const NormSolutionSet all = norm_solutions(k, N, false);
    if (all.solutions.empty()) {
      ++npx;
      continue;
    }
    for (const QuadInt& x : all.solutions) {
      if (N == 1 && x.a == 2 && x.b == 0) continue;  // the trivial solution 1
      if (!is_primitive(x)) continue;
      const FermatQuotient fq = fermat_quotient(x, pair);
      h.counts[fq.saturated ? 2 : static_cast<std::size_t>(std::min(fq.delta, 2))]++;
    }
  }
  h.finalize();
  h.extra["Nn"] = h.sample_size;
  h.extra["Npx"] = npx;
  return h;
}

}  // namespace rqf
