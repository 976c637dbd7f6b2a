#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rqf/errors.hpp"
#include "rqf/qfield.hpp"
#include "rqf/units.hpp"

using rqf::Int;
using rqf::QuadraticField;

TEST_CASE("fundamental discriminant filter matches the definition on [2, 10^4]") {
  std::vector<std::int64_t> expect;
  for (std::int64_t D = 2; D <= 10000; ++D) {
    CHECK(rqf::is_fundamental_discriminant(D) == oracle::fundamental(D));
    if (oracle::fundamental(D)) expect.push_back(D);
  }
  CHECK(rqf::fundamental_discriminants(2, 10000) == expect);
}

TEST_CASE("discriminant and radicand") {
  CHECK(QuadraticField(67).disc() == 268);
  CHECK(QuadraticField(7249).disc() == 7249);
  CHECK(QuadraticField(7249).half_basis());
  CHECK(rqf::radicand_of(268) == 67);
  CHECK(rqf::radicand_of(2917) == 2917);
  CHECK_THROWS_AS(rqf::radicand_of(20), rqf::Error);
}

TEST_CASE("field construction errors") {
  auto kind_of = [](std::int64_t m) {
    try {
      QuadraticField k(m);
    } catch (const rqf::Error& e) {
      return e.kind();
    }
    return rqf::ErrorKind::InvalidArgument;
  };
  CHECK(kind_of(12) == rqf::ErrorKind::NotSquarefree);
  CHECK(kind_of(1) == rqf::ErrorKind::MTooSmall);
  CHECK(kind_of(-5) == rqf::ErrorKind::MTooSmall);
}

TEST_CASE("ring arithmetic") {
  std::mt19937_64 rng(11);
  for (std::int64_t m : {2, 5, 13, 67, 7249, 10942}) {
    QuadraticField k(m);
    for (int i = 0; i < 200; ++i) {
      auto rnd = [&] {
        const long b = static_cast<long>(rng() % 2001) - 1000;
        long a = static_cast<long>(rng() % 2001) - 1000;
        if (k.half_basis()) {
          if ((a - b) % 2 != 0) ++a;
        } else {
          a *= 2;
        }
        return k.make(Int(a), Int(b));
      };
      const auto x = rnd(), y = rnd();
      CHECK(rqf::norm(x * y) == rqf::norm(x) * rqf::norm(y));
      CHECK(rqf::trace(x + y) == rqf::trace(x) + rqf::trace(y));
      CHECK(rqf::conj(rqf::conj(x)) == x);
      CHECK(x * rqf::conj(x) == k.make(2 * rqf::norm(x), 0));
      CHECK(rqf::pow(x, 3) == x * x * x);
      CHECK(x - x == k.make(0, 0));
    }
  }
}

TEST_CASE("mixing fields is rejected") {
  QuadraticField k1(2), k2(3);
  CHECK_THROWS_AS(k1.one() * k2.one(), rqf::Error);
}

TEST_CASE("printing in the sqrt(m) basis") {
  QuadraticField k(67);
  CHECK(rqf::to_string(k.from_sqrt_m(48842, 5967), k) == "48842 + 5967*sqrt(67)");
  CHECK(rqf::to_string(k.from_sqrt_m(8, -1), k) == "8 - sqrt(67)");
  QuadraticField k2(26893);
  CHECK(rqf::to_string(k2.make(Int("23359714011"), Int("142445225")), k2) ==
        "23359714011/2 + 142445225/2*sqrt(26893)");
}

TEST_CASE("continued fraction of omega is periodic and reproduces its states") {
  for (std::int64_t m : {2, 3, 5, 7, 13, 67, 94, 7249}) {
    QuadraticField k(m);
    const auto cf = rqf::expand_omega(k);
    REQUIRE(cf.period > 0);
    REQUIRE(cf.states.size() >= cf.preperiod + cf.period);
    const std::int64_t D = k.disc();
    for (const auto& [P, Q] : cf.states) CHECK(rqf::mod(Int(D) - P * P, Q) == 0);
  }
}

TEST_CASE("real embedding helpers") {
  QuadraticField k(67);
  const auto eps = k.from_sqrt_m(48842, 5967);
  CHECK(rqf::real_ge_one(eps));
  CHECK_FALSE(rqf::real_ge_one(rqf::conj(eps)));
  CHECK(rqf::compare_real(eps, k.one()) > 0);
  CHECK(rqf::sign_of(Int(-9), Int(1), 67) == -1);
  CHECK(rqf::log_abs(eps) == doctest::Approx(std::log(2.0 * 48842)).epsilon(1e-6));
}

TEST_CASE("splitting of primes") {
  QuadraticField k(67);
  CHECK(rqf::is_split(k, Int(3)));
  CHECK_FALSE(rqf::is_split(k, Int(5)));
  CHECK_THROWS_AS(rqf::is_split(k, Int(67)), rqf::Error);
}
