#include <doctest.h>

#include "oracles.hpp"
#include "rqf/errors.hpp"
#include "rqf/norm_solver.hpp"

using rqf::Int;
using rqf::QuadraticField;

namespace {

std::set<std::pair<Int, Int>> as_set(const rqf::NormSolutionSet& s) {
  std::set<std::pair<Int, Int>> out;
  for (const auto& x : s.solutions) out.insert({x.a, x.b});
  return out;
}

}  // namespace

TEST_CASE("norm solutions agree with exhaustive search for m <= 100, |N| <= 500") {
  constexpr std::int64_t kBound = 500;
  for (std::int64_t m = 2; m <= 100; ++m) {
    if (!oracle::squarefree(m)) continue;
    QuadraticField k(m);
    const auto table = oracle::norm_table(m, kBound);
    for (std::int64_t N = -kBound; N <= kBound; ++N) {
      if (N == 0) continue;
      INFO("m = " << m << ", N = " << N);
      const auto it = table.find(N);
      const std::set<std::pair<Int, Int>> expect = it == table.end() ? std::set<std::pair<Int, Int>>{} : it->second;
      const auto got = rqf::norm_solutions(k, Int(N), false);
      CHECK(got.solutions.size() == as_set(got).size());
      CHECK(as_set(got) == expect);
      CHECK(rqf::has_norm_solution(k, Int(N)) == !expect.empty());
      std::set<std::pair<Int, Int>> prim;
      for (const auto& [a, b] : expect)
        if (oracle::primitive(a, b, k.disc())) prim.insert({a, b});
      CHECK(as_set(rqf::norm_solutions(k, Int(N), true)) == prim);
    }
  }
}

TEST_CASE("worked examples in Q(sqrt 67)") {
  QuadraticField k(67);
  const auto s = rqf::norm_solutions(k, Int(-3), false);
  std::set<std::pair<Int, Int>> expect{{Int(2 * 9053), Int(1106)}, {Int(16), Int(1)}};
  CHECK(as_set(s) == expect);
  const auto s181 = rqf::norm_solutions(k, Int(181), false);
  CHECK(as_set(s181) == std::set<std::pair<Int, Int>>{{Int(56), Int(3)}, {Int(56), Int(-3)}});
  const auto one = rqf::norm_solutions(k, Int(1), false);
  REQUIRE(one.solutions.size() == 1);
  CHECK(one.solutions[0] == k.one());
  CHECK(rqf::norm_solutions(k, Int(-1), false).solutions.empty());
}

TEST_CASE("a large solution in Q(sqrt 1867)") {
  QuadraticField k(1867);
  const auto s = rqf::norm_solutions(k, Int(-107), false);
  bool found = false;
  for (const auto& x : s.solutions) {
    CHECK(rqf::norm(x) == -107);
    if (x == k.from_sqrt_m(1472815, 34086)) found = true;
  }
  CHECK(found);
}

TEST_CASE("non-primitive solutions") {
  QuadraticField k(67);
  // 9 = N(3) and 3 is not primitive; 9 = N(x) for x with x in P^2 also exists.
  const auto all = rqf::norm_solutions(k, Int(9), false);
  const auto prim = rqf::norm_solutions(k, Int(9), true);
  bool has_three = false;
  for (const auto& x : all.solutions)
    if (x == k.make(6, 0)) has_three = true;
  CHECK(has_three);
  for (const auto& x : prim.solutions) CHECK(rqf::is_primitive(x));
  CHECK(prim.solutions.size() < all.solutions.size());
  CHECK_FALSE(rqf::is_primitive(k.make(6, 0)));
  CHECK(rqf::is_primitive(k.from_sqrt_m(8, 1)));
}

TEST_CASE("invalid inputs") {
  QuadraticField k(67);
  CHECK_THROWS_AS(rqf::norm_solutions(k, Int(0), false), rqf::Error);
}
