#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "rqf/classgroup.hpp"
#include "rqf/errors.hpp"
#include "rqf/invariants.hpp"
#include "rqf/norm_solver.hpp"
#include "rqf/rayclass.hpp"
#include "rqf/stats.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;

unsigned default_jobs() {
  if (const char* env = std::getenv("RQF_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ordered_json int_json(const rqf::Int& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

struct Options {
  std::optional<std::int64_t> m;
  std::optional<std::int64_t> D;
  std::int64_t p = 3;
  int t = rqf::kDefaultPrecision;
  std::int64_t bD = 2;
  std::int64_t BD = 0;
  int vh_min = 0;
  int zmax_exp = 0;
  int n = 0;
  std::uint64_t BL = 0;
  std::uint64_t BL_low = 0;
  std::vector<std::int64_t> r;
  std::vector<std::uint64_t> pool;
  std::uint64_t pool_bound = 1000;
  std::uint64_t trials = 1000;
  std::optional<std::uint64_t> seed;
  std::string N;
  bool primitive = false;
  std::string format = "json";
  std::string out;
  unsigned jobs = 0;
};

rqf::QuadraticField field_of(const Options& o) {
  if (o.m && o.D) throw rqf::Error(rqf::ErrorKind::InvalidArgument, "give either --m or --D");
  if (o.D) {
    if (!rqf::is_fundamental_discriminant(*o.D))
      throw rqf::Error(rqf::ErrorKind::NotSquarefree, std::to_string(*o.D) + " is not a fundamental discriminant");
    return rqf::QuadraticField(rqf::radicand_of(*o.D));
  }
  if (!o.m) throw rqf::Error(rqf::ErrorKind::InvalidArgument, "--m or --D is required");
  return rqf::QuadraticField(*o.m);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw rqf::Error(rqf::ErrorKind::InvalidArgument, "cannot open " + o.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

ordered_json config_json(const std::string& cmd, const Options& o, const rqf::QuadraticField* k) {
  ordered_json c;
  c["subcommand"] = cmd;
  if (k) {
    c["m"] = k->m();
    c["D"] = k->disc();
  }
  c["p"] = o.p;
  if (cmd == "survey-orders" || cmd == "survey-ell-units") {
    c["n"] = o.n;
    c["BL"] = o.BL;
    c["BL_low"] = o.BL_low;
  }
  if (cmd == "survey-ell-units") c["r"] = o.r;
  if (cmd == "survey-relations") {
    c["pool"] = o.pool;
    c["trials"] = o.trials;
    c["seed"] = o.seed ? *o.seed : 0;
  }
  c["jobs"] = o.jobs;
  c["format"] = o.format;
  return c;
}

std::string histogram_output(const Options& o, const ordered_json& config, const rqf::SurveyHistogram& h,
                             long long ms) {
  if (o.format == "csv") return h.to_csv();
  ordered_json j = ordered_json::parse(h.to_json());
  j["elapsed_ms"] = ms;
  j["config"] = config;
  return j.dump();
}

long long since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
}

int run(const std::string& cmd, Options& o) {
  if (o.jobs == 0) o.jobs = default_jobs();
  const auto t0 = std::chrono::steady_clock::now();

  if (cmd == "analyze") {
    const rqf::QuadraticField k = field_of(o);
    emit(o, o.format == "csv" ? rqf::csv_header() + "\n" + rqf::to_csv(rqf::analyze(k, o.p, o.t))
                              : rqf::to_json(rqf::analyze(k, o.p, o.t)));
    return 0;
  }
  if (cmd == "scan") {
    rqf::ScanFilters f;
    f.vh_min = o.vh_min;
    f.zmax_exp = o.zmax_exp;
    std::vector<rqf::ScanError> errors;
    const auto reports = rqf::scan(o.bD, o.BD, o.p, f, o.jobs, &errors);
    std::ostringstream os;
    if (o.format == "csv") {
      os << rqf::csv_header() << '\n';
      for (const auto& r : reports) os << rqf::to_csv(r) << '\n';
    } else {
      ordered_json j;
      j["bD"] = o.bD;
      j["BD"] = o.BD;
      j["p"] = o.p;
      j["vh_min"] = o.vh_min;
      j["zmax_exp"] = o.zmax_exp;
      j["count"] = reports.size();
      j["reports"] = ordered_json::array();
      for (const auto& r : reports) j["reports"].push_back(ordered_json::parse(rqf::to_json(r)));
      j["errors"] = ordered_json::array();
      for (const auto& e : errors) j["errors"].push_back({{"D", e.D}, {"kind", e.kind}, {"message", e.message}});
      os << j.dump();
    }
    emit(o, os.str());
    return 0;
  }
  if (cmd == "rayclass") {
    const rqf::QuadraticField k = field_of(o);
    const rqf::TorsionStructure ts = rqf::torsion_structure(k, o.p, o.t);
    ordered_json j;
    j["m"] = k.m();
    j["D"] = k.disc();
    j["p"] = o.p;
    j["t"] = o.t;
    j["divisors"] = ordered_json::array();
    for (const auto& d : ts.divisors) j["divisors"].push_back(int_json(d));
    j["rank"] = ts.rank;
    j["p_part"] = ordered_json::array();
    for (const auto& d : ts.p_part_orders) j["p_part"].push_back(int_json(d));
    j["saturated_at"] = ts.saturated_at;
    emit(o, j.dump());
    return 0;
  }
  if (cmd == "survey-orders" || cmd == "survey-ell-units") {
    const rqf::QuadraticField k = field_of(o);
    const rqf::ScanSpec spec{o.p, o.n, o.BL, o.BL_low};
    if (cmd == "survey-orders") {
      const auto h = rqf::order_survey(k, spec, o.jobs);
      emit(o, histogram_output(o, config_json(cmd, o, &k), h, since(t0)));
      return 0;
    }
    if (o.r.empty()) throw rqf::Error(rqf::ErrorKind::InvalidArgument, "--r is required");
    const auto s = rqf::ell_survey(k, spec, o.r, o.jobs);
    std::string text;
    for (std::int64_t r : o.r) text += histogram_output(o, config_json(cmd, o, &k), s.deltas.at(r), since(t0)) + "\n";
    emit(o, text);
    return 0;
  }
  if (cmd == "survey-relations") {
    const rqf::QuadraticField k = field_of(o);
    if (o.pool.empty()) o.pool = rqf::relation_pool(k, o.p, o.pool_bound);
    const auto h = rqf::relation_survey(k, o.p, o.pool, o.trials, *o.seed);
    emit(o, histogram_output(o, config_json(cmd, o, &k), h, since(t0)));
    return 0;
  }
  if (cmd == "solve-norm") {
    const rqf::QuadraticField k = field_of(o);
    rqf::Int N;
    if (N.set_str(o.N, 10) != 0) throw rqf::Error(rqf::ErrorKind::InvalidArgument, "bad --N");
    const auto set = rqf::norm_solutions(k, N, o.primitive);
    ordered_json j;
    j["m"] = k.m();
    j["N"] = int_json(N);
    j["primitive"] = o.primitive;
    j["solutions"] = ordered_json::array();
    for (const auto& x : set.solutions) j["solutions"].push_back(rqf::to_string(x, k));
    emit(o, j.dump());
    return 0;
  }
  throw rqf::Error(rqf::ErrorKind::InvalidArgument, "unknown subcommand");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic of real quadratic fields at a split prime"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_field = [&](CLI::App* s) {
    s->add_option("--m", o.m, "squarefree radicand")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
    s->add_option("--D", o.D, "fundamental discriminant");
  };
  auto add_p = [&](CLI::App* s) { s->add_option("--p", o.p, "prime")->check(CLI::Range(2, 1000003)); };
  auto add_common = [&](CLI::App* s, bool csv) {
    if (csv) s->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--out", o.out, "output file (default stdout)");
  };
  auto add_jobs = [&](CLI::App* s) {
    s->add_option("--jobs", o.jobs, "worker threads (default RQF_JOBS or hardware concurrency)")
        ->check(CLI::Range(1u, 1024u));
  };

  auto* analyze = app.add_subcommand("analyze", "invariants of one field");
  add_field(analyze);
  add_p(analyze);
  analyze->add_option("--t,--nt", o.t, "p-adic precision")->check(CLI::Range(2, rqf::kMaxPrecision));
  add_common(analyze, true);

  auto* scan = app.add_subcommand("scan", "scan fundamental discriminants");
  scan->add_option("--bd", o.bD, "lower bound on D")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  scan->add_option("--BD", o.BD, "upper bound on D")->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  add_p(scan);
  scan->add_option("--vh-min", o.vh_min, "minimal v_p(h)")->check(CLI::Range(0, 64));
  scan->add_option("--zmax-exp", o.zmax_exp, "minimal delta_p(eps)")->check(CLI::Range(0, 64));
  add_jobs(scan);
  add_common(scan, true);

  auto* ray = app.add_subcommand("rayclass", "torsion group T_k");
  add_field(ray);
  add_p(ray);
  ray->add_option("--nt,--t", o.t, "modulus exponent")->check(CLI::Range(2, 32));
  add_common(ray, false);

  auto* orders = app.add_subcommand("survey-orders", "class orders of primes above l");
  auto* ells = app.add_subcommand("survey-ell-units", "delta of l-units by class order");
  for (auto* s : {orders, ells}) {
    add_field(s);
    add_p(s);
    s->add_option("--n", o.n, "level: l = +-1 mod p^(n+1)")->check(CLI::Range(0, 30));
    s->add_option("--bl", o.BL, "exclusive bound on l")->required()->check(CLI::Range(std::uint64_t{3}, std::uint64_t{1} << 50));
    s->add_option("--bl-low", o.BL_low, "inclusive lower bound on l");
    add_jobs(s);
    add_common(s, true);
  }
  ells->add_option("--r", o.r, "class order(s)")->required()->check(CLI::PositiveNumber);

  auto* rel = app.add_subcommand("survey-relations", "random products of a prime pool");
  add_field(rel);
  add_p(rel);
  rel->add_option("--pool", o.pool, "pool primes in order (default: split l = 1 mod 2p^2 below --pool-bound, descending)")
      ->delimiter(',');
  rel->add_option("--pool-bound", o.pool_bound, "bound for the default pool")->check(CLI::Range(std::uint64_t{3}, std::uint64_t{1} << 32));
  rel->add_option("--trials", o.trials, "number of products")->check(CLI::Range(std::uint64_t{0}, std::uint64_t{1} << 32));
  rel->add_option("--seed", o.seed, "RNG seed")->required();
  add_common(rel, true);

  auto* solve = app.add_subcommand("solve-norm", "integers of given norm");
  add_field(solve);
  solve->add_option("--N", o.N, "norm")->required();
  solve->add_flag("--primitive", o.primitive, "only primitive solutions");
  add_common(solve, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, o);
  } catch (const rqf::Error& e) {
    ordered_json j;
    j["error"] = rqf::to_string(e.kind());
    j["message"] = e.what();
    std::cout << j.dump() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    ordered_json j;
    j["error"] = "Internal";
    j["message"] = e.what();
    std::cout << j.dump() << '\n';
    return 1;
  }
}
