// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "oracles.hpp"
#include "rqf/classgroup.hpp"
#include "rqf/errors.hpp"
#include "rqf/invariants.hpp"
#include "rqf/norm_solver.hpp"
#include "rqf/rayclass.hpp"
#include "rqf/stats.hpp"

using rqf::Int;
using rqf::QuadraticField;

namespace {

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Check {
  bool ok = true;
  std::ostringstream why;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) why << what;
      ok = false;
    }
  }
};

bool near(double got, double want, double tol) { return std::fabs(got - want) <= tol; }

std::string fmt(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(4);
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  os << ']';
  return os.str();
}

Int product(const std::vector<Int>& v) {
  Int p = 1;
  for (const auto& x : v) p *= x;
  return p;
}

// Shared by criteria 5 to 7.
rqf::EllSurvey& survey_72262() {
  static rqf::EllSurvey s = rqf::ell_survey(QuadraticField(72262), {3, 8, 10000000000ULL}, {1, 3, 9}, jobs());
  return s;
}
rqf::EllSurvey& survey_10942() {
  static rqf::EllSurvey s = rqf::ell_survey(QuadraticField(10942), {3, 8, 10000000000ULL}, {1, 3}, jobs());
  return s;
}

Check invariant_table() {
  Check c;
  struct Row {
    std::int64_t m, h3;
    int de, dn;
    bool classes, normique;
  };
  const std::vector<Row> rows{
      {67, 1, 2, 1, false, true},      {1867, 1, 5, 1, false, true},   {3259, 1, 4, 0, false, false},
      {7249, 3, 4, 0, false, false},   {10942, 3, 6, 1, false, true},  {26893, 3, 3, 3, true, true},
      {31069, 3, 3, 1, true, true},    {72262, 9, 4, 0, false, false}, {92269, 3, 3, 1, true, true},
      {94918, 3, 3, 2, true, true},    {171061, 3, 4, 4, true, true},  {6559, 9, 3, 1, false, true}};
  for (const auto& row : rows) {
    const auto r = rqf::analyze(QuadraticField(row.m), 3);
    const std::int64_t h3 = static_cast<std::int64_t>(std::pow(3, r.vp_h) + 0.5);
    std::ostringstream os;
    os << "m=" << row.m << " got (" << h3 << ", " << r.delta_eps << ", " << r.delta_eta << ", " << r.pb_classes
       << r.pb_normique << ")";
    c.expect(h3 == row.h3 && r.delta_eps == row.de && r.delta_eta == row.dn && r.pb_classes == row.classes &&
                 r.pb_normique == row.normique,
             os.str());
  }
  return c;
}

Check units() {
  Check c;
  const std::vector<std::pair<std::int64_t, std::string>> rows{
      {67, "48842 + 5967*sqrt(67)"},
      {6559, "6560 + 81*sqrt(6559)"},
      {26893, "23359714011/2 + 142445225/2*sqrt(26893)"},
      {31069, "164560570852019805/2 + 933602804601721/2*sqrt(31069)"},
      {10942, "11571032155720815417599 + 110617476121372232880*sqrt(10942)"},
      {72262, "170043910956651732101 + 632566365854478210*sqrt(72262)"}};
  for (const auto& [m, s] : rows) {
    QuadraticField k(m);
    const std::string got = rqf::to_string(k.unit().eps, k);
    c.expect(got == s, "m=" + std::to_string(m) + " got " + got);
  }
  return c;
}

Check torsion() {
  Check c;
  const std::vector<std::pair<std::int64_t, std::vector<long>>> rows{
      {2917, {9, 3}}, {6856, {3, 3}}, {7465, {9, 9}},      {8713, {9, 3}},
      {8920, {3, 3}}, {9052, {3, 3}}, {13861, {2187, 3}}, {15529, {27, 3}}};
  auto check = [&](const QuadraticField& k, const std::vector<long>& want, const std::string& tag) {
    const auto ts = rqf::torsion_structure(k, 3);
    std::vector<Int> w(want.begin(), want.end());
    std::ostringstream os;
    os << tag << " got [";
    for (const auto& x : ts.p_part_orders) os << x << ' ';
    os << "]";
    c.expect(ts.p_part_orders == w && ts.rank == static_cast<int>(w.size()), os.str());
  };
  for (const auto& [D, want] : rows) check(QuadraticField(rqf::radicand_of(D)), want, "D=" + std::to_string(D));
  check(QuadraticField(1714), {3, 3}, "m=1714");
  return c;
}

Check scan_p11() {
  Check c;
  rqf::ScanFilters f;
  f.vh_min = 1;
  f.zmax_exp = 2;
  std::vector<rqf::ScanError> errors;
  const auto reports = rqf::scan(2, 300000, 11, f, jobs(), &errors);
  std::vector<std::int64_t> got;
  for (const auto& r : reports) got.push_back(r.D);
  std::ostringstream os;
  os << "got";
  for (auto d : got) os << ' ' << d;
  c.expect(got == std::vector<std::int64_t>{73217, 83689, 201997, 265681}, os.str());
  c.expect(errors.empty(), "per-field errors during scan");
  return c;
}

Check order_distribution() {
  Check c;
  const auto& h = survey_72262().orders;
  const std::vector<double> want{1.0 / 9, 2.0 / 9, 6.0 / 9};
  bool ok = h.proportions.size() == 3;
  for (std::size_t i = 0; ok && i < 3; ++i) ok = near(h.proportions[i], want[i], 0.02);
  c.expect(ok, "proportions " + fmt(h.proportions) + " over " + std::to_string(h.sample_size));
  c.why << (c.ok ? "NL=" + std::to_string(h.sample_size) + " " + fmt(h.proportions) : "");
  return c;
}

Check delta_distribution() {
  Check c;
  const auto want = rqf::expected_delta_distribution(3, 5);
  for (auto* s : {&survey_72262(), &survey_10942()}) {
    const auto& h = s->deltas.at(1);
    bool ok = h.sample_size > 0;
    for (std::size_t i = 0; ok && i < want.size(); ++i) ok = near(h.proportions[i], want[i], 0.02);
    c.expect(ok, "m=" + h.params.at("m") + " proportions " + fmt(h.proportions));
  }
  if (c.ok)
    c.why << "72262: " << fmt(survey_72262().deltas.at(1).proportions) << " 10942: "
          << fmt(survey_10942().deltas.at(1).proportions);
  return c;
}

Check structural_zeroes() {
  Check c;
  for (std::int64_t r : {3, 9}) {
    const auto& h = survey_72262().deltas.at(r);
    c.expect(h.sample_size > 0 && h.counts[0] == h.sample_size, "m=72262 r=" + std::to_string(r));
  }
  {
    const auto& h = survey_10942().deltas.at(3);
    c.expect(h.sample_size > 0 && h.counts[0] == 0, "m=10942 r=3");
  }
  const rqf::ScanSpec spec{3, 8, 1000000000ULL};
  {
    const auto h = rqf::ell_unit_delta_survey(QuadraticField(31069), spec, 3, jobs());
    c.expect(h.sample_size > 0 && h.counts[0] == 0, "m=31069 r=3");
  }
  for (std::int64_t m : {26893, 92269, 94918, 171061}) {
    const auto h = rqf::ell_unit_delta_survey(QuadraticField(m), spec, 3, jobs());
    c.expect(h.sample_size > 0 && h.counts[0] == h.sample_size, "m=" + std::to_string(m) + " r=3");
  }
  return c;
}

Check relation_survey() {
  Check c;
  QuadraticField k(7249);
  const auto pool = rqf::relation_pool(k, 3, 1000);
  c.expect(pool == std::vector<std::uint64_t>{937, 883, 811, 631, 487, 181, 163, 37}, "unexpected pool");
  const auto h = rqf::relation_survey(k, 3, pool, 1000, 2024);
  const double nn = static_cast<double>(h.extra.at("Nn"));
  const double c0 = static_cast<double>(h.counts[0]) / nn;
  const double px = static_cast<double>(h.extra.at("Npx")) / nn;
  std::ostringstream os;
  os << "Nn=" << h.extra.at("Nn") << " Npx=" << h.extra.at("Npx") << " C0/Nn=" << c0 << " Npx/Nn=" << px;
  c.expect(h.extra.at("Nn") >= 5000, os.str());
  c.expect(c0 >= 0.63 && c0 <= 0.70, os.str());
  c.expect(px >= 0.02 && px <= 0.06, os.str());
  c.expect(rqf::relation_survey(k, 3, pool, 1000, 2024).to_json() == h.to_json(), "not reproducible");
  if (c.ok) c.why << os.str();
  return c;
}

Check oracle_suites() {
  Check c;
  // Norm equations.
  for (std::int64_t m = 2; m <= 100 && c.ok; ++m) {
    if (!oracle::squarefree(m)) continue;
    QuadraticField k(m);
    const auto table = oracle::norm_table(m, 500);
    for (std::int64_t N = -500; N <= 500; ++N) {
      if (N == 0) continue;
      std::set<std::pair<Int, Int>> got;
      for (const auto& x : rqf::norm_solutions(k, Int(N), false).solutions) got.insert({x.a, x.b});
      const auto it = table.find(N);
      const auto want = it == table.end() ? std::set<std::pair<Int, Int>>{} : it->second;
      c.expect(got == want, "norm m=" + std::to_string(m) + " N=" + std::to_string(N));
    }
  }
  // Units.
  for (std::int64_t m = 2; m < 300; ++m) {
    if (!oracle::squarefree(m)) continue;
    const auto o = oracle::pell_cf(m);
    const QuadraticField k(m);
    const auto& u = k.unit();
    c.expect(u.eps.a == o.a && u.eps.b == o.b && u.norm_eps == o.norm, "unit m=" + std::to_string(m));
  }
  // Class groups.
  for (std::int64_t D = 5; D < 5000; ++D) {
    if (!oracle::fundamental(D)) continue;
    const std::int64_t m = D % 4 == 0 ? D / 4 : D;
    const std::int64_t hp = oracle::narrow_class_number(D);
    const std::int64_t h = oracle::pell_cf(m).norm == -1 ? hp : hp / 2;
    const auto st = rqf::class_group_structure(QuadraticField(m));
    std::int64_t prod = 1;
    for (auto n : st.cyclic_orders) prod *= n;
    c.expect(st.h == h && prod == h, "class group D=" + std::to_string(D));
  }
  // Fermat quotients.
  std::mt19937_64 rng(1);
  for (std::int64_t m : {67, 1867, 3259, 7249, 10942, 26893, 31069, 72262, 92269, 94918, 171061, 6559}) {
    QuadraticField k(m);
    const auto pair = rqf::split_embeddings(k, 3, 9);
    for (int n = 0; n < 1000;) {
      const long b = static_cast<long>(rng() % 2000001) - 1000000;
      long a = static_cast<long>(rng() % 2000001) - 1000000;
      if (k.half_basis()) {
        if ((a - b) % 2 != 0) ++a;
      } else {
        a *= 2;
      }
      const auto x = k.make(a, b);
      if (rqf::norm(x) % 3 == 0) continue;
      ++n;
      const auto v = rqf::fermat_quotient(x, pair), o = rqf::fermat_quotient_by_order(x, pair);
      c.expect(v.delta == o.delta && v.saturated == o.saturated, "fermat m=" + std::to_string(m));
    }
  }
  return c;
}

Check cross_module() {
  Check c;
  std::vector<std::int64_t> pool;
  for (std::int64_t D = 5; D < 100000; ++D)
    if (rqf::is_fundamental_discriminant(D) && rqf::kronecker(Int(D), Int(3)) == 1) pool.push_back(D);
  std::mt19937_64 rng(12345);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(50);
  for (std::int64_t D : pool) {
    QuadraticField k(rqf::radicand_of(D));
    const auto r = rqf::analyze(k, 3);
    const auto ts = rqf::torsion_structure(k, 3);
    const Int expect = rqf::ipow(Int(3), static_cast<unsigned long>(r.vp_h + r.delta_eps));
    c.expect(product(ts.p_part_orders) == expect && r.torsion_order == expect, "torsion D=" + std::to_string(D));
    for (int n = 0; n <= r.delta_eps + 2; ++n) {
      const Int a = rqf::ambiguous_class_number(k, 3, n);
      c.expect((n >= r.delta_eps) == (a == r.torsion_order), "ambiguous D=" + std::to_string(D));
    }
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"invariant table", invariant_table},
      {"fundamental units", units},
      {"torsion structure", torsion},
      {"p=11 scan", scan_p11},
      {"order distribution", order_distribution},
      {"delta distribution", delta_distribution},
      {"structural zeroes", structural_zeroes},
      {"relation survey", relation_survey},
      {"oracle suites", oracle_suites},
      {"cross-module identity", cross_module}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first << ") ["
              << std::fixed;
    std::cout.precision(1);
    std::cout << secs << "s]";
    const std::string why = c.why.str();
    if (!why.empty()) std::cout << ": " << why;
    std::cout << std::endl;
    std::cout.unsetf(std::ios::fixed);
    if (!c.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
