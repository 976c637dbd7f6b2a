#include <doctest.h>

#include <random>

#include "rqf/classgroup.hpp"
#include "rqf/errors.hpp"
#include "rqf/padic.hpp"
#include "rqf/rayclass.hpp"

using rqf::Int;
using rqf::QuadraticField;

namespace {

std::vector<Int> ints(std::initializer_list<long> v) {
  std::vector<Int> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

Int product(const std::vector<Int>& v) {
  Int p = 1;
  for (const auto& x : v) p *= x;
  return p;
}

}  // namespace

TEST_CASE("residue group orders") {
  QuadraticField k(67);
  rqf::ResidueGroup split(k, 3, 4);
  CHECK(split.split());
  CHECK(split.size() == 54 * 54);
  rqf::ResidueGroup inert(QuadraticField(5), 3, 4);
  CHECK_FALSE(inert.split());
  CHECK(inert.size() == 8 * 27 * 27);
  CHECK_THROWS_AS(rqf::ResidueGroup(QuadraticField(3), 3, 4), rqf::Error);
}

TEST_CASE("residue coordinates are a homomorphism and element orders match") {
  std::mt19937_64 rng(9);
  for (std::int64_t m : {67, 5, 7249}) {
    QuadraticField k(m);
    rqf::ResidueGroup G(k, 3, 4);
    const auto& ord = G.orders();
    auto rnd = [&] {
      for (;;) {
        const long b = static_cast<long>(rng() % 500);
        long a = static_cast<long>(rng() % 500);
        if (k.half_basis()) {
          if ((a - b) % 2 != 0) ++a;
        } else {
          a *= 2;
        }
        auto x = k.make(a, b);
        if (rqf::norm(x) % 3 != 0) return x;
      }
    };
    for (int i = 0; i < 200; ++i) {
      const auto x = rnd(), y = rnd();
      const auto cx = G.coordinates(x), cy = G.coordinates(y), cxy = G.coordinates(x * y);
      REQUIRE(cx.size() == ord.size());
      for (std::size_t j = 0; j < ord.size(); ++j) CHECK(rqf::mod(cx[j] + cy[j] - cxy[j], ord[j]) == 0);
      // Order from coordinates = lcm of ord_j / gcd(c_j, ord_j).
      Int o = 1;
      for (std::size_t j = 0; j < ord.size(); ++j) o = rqf::lcm(o, ord[j] / rqf::gcd(cx[j], ord[j]));
      CHECK(o == G.element_order(x));
    }
  }
}

TEST_CASE("ray class presentation order matches the class number formula") {
  for (std::int64_t m : {67, 2917, 1714, 7249, 5, 13, 6559}) {
    QuadraticField k(m);
    for (int t : {2, 3, 5}) {
      const auto pres = rqf::ray_class_structure(k, 3, t);
      CHECK(product(pres.divisors) == pres.expected_order);
      for (std::size_t i = 1; i < pres.divisors.size(); ++i) CHECK(pres.divisors[i - 1] % pres.divisors[i] == 0);
    }
  }
}

TEST_CASE("torsion from divisors") {
  CHECK(rqf::torsion_from_divisors(ints({6561 * 2, 9, 3}), 3) == ints({9, 3}));
  CHECK(rqf::torsion_from_divisors(ints({6561}), 3).empty());
  CHECK(rqf::torsion_from_divisors(ints({}), 3).empty());
  CHECK(rqf::torsion_from_divisors(ints({6561, 18, 2}), 3) == ints({9}));
}

TEST_CASE("published torsion groups") {
  const std::vector<std::pair<std::int64_t, std::vector<Int>>> cases{
      {2917, ints({9, 3})},  {6856, ints({3, 3})},  {7465, ints({9, 9})},    {8713, ints({9, 3})},
      {8920, ints({3, 3})},  {9052, ints({3, 3})},  {13861, ints({2187, 3})}, {15529, ints({27, 3})}};
  for (const auto& [D, expect] : cases) {
    INFO("D = " << D);
    QuadraticField k(rqf::radicand_of(D));
    const auto ts = rqf::torsion_structure(k, 3);
    CHECK(ts.p_part_orders == expect);
    CHECK(ts.rank == static_cast<int>(expect.size()));
    CHECK(ts.saturated_at == 9);
  }
  const auto ts1714 = rqf::torsion_structure(QuadraticField(1714), 3);
  CHECK(ts1714.rank == 2);
  CHECK(ts1714.p_part_orders == ints({3, 3}));
}

TEST_CASE("torsion order equals p^(v(h) + delta(eps)) at split p") {
  for (std::int64_t m : {67, 1867, 3259, 7249, 10942, 26893}) {
    QuadraticField k(m);
    const auto ts = rqf::torsion_structure(k, 3);
    const int e = rqf::valuation(k.class_group().h(), 3) + rqf::delta_auto(k, k.unit().eps, 3);
    CHECK(product(ts.p_part_orders) == rqf::ipow(Int(3), static_cast<unsigned long>(e)));
  }
}

TEST_CASE("ramified prime is rejected") {
  CHECK_THROWS_AS(rqf::ray_class_structure(QuadraticField(6), 3, 4), rqf::Error);
}
