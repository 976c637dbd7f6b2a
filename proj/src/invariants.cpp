#include "rqf/invariants.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include "rqf/classgroup.hpp"
#include "rqf/errors.hpp"

namespace rqf {

namespace {

int vp(std::int64_t n, std::int64_t p) { return valuation(n, p); }

Int ppow(std::int64_t p, int e) { return ipow(Int(static_cast<long>(p)), static_cast<unsigned long>(e)); }

nlohmann::ordered_json int_json(const Int& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

}  // namespace

InvariantReport analyze(const QuadraticField& k, std::int64_t p, int t) {
  if (!is_split(k, Int(static_cast<long>(p))))
    throw Error(ErrorKind::NotSplit, std::to_string(p) + " is not split in Q(sqrt " + std::to_string(k.m()) + ")");
  InvariantReport r;
  r.m = k.m();
  r.D = k.disc();
  r.p = p;
  r.h = k.class_group().h();
  r.vp_h = vp(r.h, p);
  PUnitRecord pu = p_unit(k, p);
  r.h0 = pu.h0;
  r.vp_h0 = vp(r.h0, p);
  r.eps = k.unit().eps;
  r.eta = pu.eta;
  r.delta_eps = delta_auto(k, r.eps, p, t);
  r.delta_eta = delta_counit_auto(k, pu, p, t);
  r.pb_classes = r.vp_h != r.vp_h0;
  r.pb_normique = r.delta_eps >= 1 && r.delta_eta >= 1;
  r.sufficient = !r.pb_classes && !r.pb_normique;
  r.log_trivial = r.sufficient;
  r.p_rational = r.vp_h == 0 && r.delta_eps == 0;
  r.regulator_order = ppow(p, r.delta_eps);
  r.torsion_order = ppow(p, r.vp_h) * r.regulator_order;
  return r;
}

Int ambiguous_class_number(const QuadraticField& k, std::int64_t p, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "n must be nonnegative");
  if (!is_split(k, Int(static_cast<long>(p)))) throw Error(ErrorKind::NotSplit, "p is not split");
  const int vh = vp(k.class_group().h(), p);
  const int de = delta_auto(k, k.unit().eps, p);
  return ppow(p, vh + std::min(de, n));
}

std::vector<InvariantReport> scan(std::int64_t bD, std::int64_t BD, std::int64_t p,
                                  const ScanFilters& filters, unsigned jobs,
                                  std::vector<ScanError>* errors) {
  if (bD > BD) throw Error(ErrorKind::InvalidArgument, "bD must not exceed BD");
  const std::int64_t lo = std::max<std::int64_t>(bD, 2);
  constexpr std::int64_t kBlock = 2048;
  const std::int64_t blocks = BD < lo ? 0 : (BD - lo) / kBlock + 1;
  std::vector<std::vector<InvariantReport>> found(static_cast<std::size_t>(blocks));
  std::vector<std::vector<ScanError>> failed(static_cast<std::size_t>(blocks));
  std::atomic<std::int64_t> next{0};
  const Int pp(static_cast<long>(p));

  auto worker = [&] {
    for (std::int64_t bi; (bi = next.fetch_add(1)) < blocks;) {
      const std::int64_t start = lo + bi * kBlock;
      const std::int64_t stop = std::min(BD, start + kBlock - 1);
      for (std::int64_t d = start; d <= stop; ++d) {
        if (!is_fundamental_discriminant(d)) continue;
        try {
          const Int dd(static_cast<long>(d));
          const int kr = kronecker(dd, pp);
          if (kr == 0) continue;
          if (kr != 1) {
            // Reports need a split prime; without the filter the skip is logged.
            if (!filters.require_split)
              failed[static_cast<std::size_t>(bi)].push_back({d, "NotSplit", "p is inert"});
            continue;
          }
          QuadraticField k(radicand_of(d));
          if (vp(k.class_group().h(), p) < filters.vh_min) continue;
          if (filters.zmax_exp > 0 && delta_auto(k, k.unit().eps, p) < filters.zmax_exp) continue;
          found[static_cast<std::size_t>(bi)].push_back(analyze(k, p));
        } catch (const Error& e) {
          failed[static_cast<std::size_t>(bi)].push_back({d, to_string(e.kind()), e.what()});
        }
      }
    }
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<InvariantReport> out;
  for (auto& v : found)
    for (auto& r : v) out.push_back(std::move(r));
  if (errors)
    for (auto& v : failed)
      for (auto& e : v) errors->push_back(std::move(e));
  return out;
}

std::string to_json(const InvariantReport& r) {
  QuadraticField k(r.m);
  nlohmann::ordered_json j;
  j["m"] = r.m;
  j["D"] = r.D;
  j["p"] = r.p;
  j["h"] = r.h;
  j["h0"] = r.h0;
  j["vp_h"] = r.vp_h;
  j["vp_h0"] = r.vp_h0;
  j["delta_eps"] = r.delta_eps;
  j["delta_eta"] = r.delta_eta;
  j["pb_classes"] = r.pb_classes;
  j["pb_normique"] = r.pb_normique;
  j["sufficient"] = r.sufficient;
  if (r.log_trivial) j["log_trivial"] = *r.log_trivial;
  j["p_rational"] = r.p_rational;
  j["torsion_order"] = int_json(r.torsion_order);
  j["regulator_order"] = int_json(r.regulator_order);
  j["eps"] = to_string(r.eps, k);
  j["eta"] = to_string(r.eta, k);
  return j.dump();
}

std::string csv_header() {
  return "m,D,p,h,h0,vp_h,vp_h0,delta_eps,delta_eta,pb_classes,pb_normique,sufficient,log_trivial,p_rational,"
         "torsion_order";
}

std::string to_csv(const InvariantReport& r) {
  std::ostringstream os;
  auto b = [](bool v) { return v ? "true" : "false"; };
  os << r.m << ',' << r.D << ',' << r.p << ',' << r.h << ',' << r.h0 << ',' << r.vp_h << ',' << r.vp_h0 << ','
     << r.delta_eps << ',' << r.delta_eta << ',' << b(r.pb_classes) << ',' << b(r.pb_normique) << ','
     << b(r.sufficient) << ',' << (r.log_trivial ? b(*r.log_trivial) : "") << ',' << b(r.p_rational) << ','
     << r.torsion_order.get_str();
  return os.str();
}

}  // namespace rqf
