#include <catch_amalgamated.hpp>

#include <random>

#include "algdyn/cyclic_semigroup.hpp"
#include "algdyn/finite_dynamics.hpp"
#include "algdyn/verify.hpp"

using namespace algdyn;
using algdyn::sweeps::oracle::power_table_profile;

TEST_CASE("orbit profile on small tables") {
  CHECK(analyze(FiniteMap::identity(4), 100) == OrbitProfile{1, 1});
  CHECK(analyze(FiniteMap({2, 2, 2}), 100) == OrbitProfile{1, 1});
  // powers: f, f^2 = [2,3,2,3,1], f^3 = [3,2,3,2,2], f^4 = [2,3,2,3,3], f^5 = f^3
  FiniteMap const f({1, 2, 3, 2, 0});
  CHECK(analyze(f, 100) == OrbitProfile{3, 2});
  CHECK(power_table_profile(f, 100) == OrbitProfile{3, 2});
  // 4-cycle: a permutation of order 4
  CHECK(analyze(FiniteMap({1, 2, 3, 0}), 100) == OrbitProfile{1, 4});
}

TEST_CASE("idempotent exponent") {
  CHECK(OrbitProfile{1, 1}.idempotent_exponent() == 1);
  CHECK(OrbitProfile{3, 4}.idempotent_exponent() == 4);
  CHECK(OrbitProfile{5, 2}.idempotent_exponent() == 6);
  CHECK(OrbitProfile{3, 2}.idempotent_exponent() == 4);
  CHECK(idempotent_power(OrbitProfile{7, 3}) == 9);
}

TEST_CASE("budget is an exact bound on the order") {
  FiniteMap const seven({1, 2, 3, 4, 5, 6, 0});
  CHECK(analyze(seven, 7).period == 7);
  try {
    analyze(seven, 6);
    FAIL("expected OrderExceedsBudget");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::order_exceeds_budget);
  }
  // (Z, +) with a = 1 never repeats
  CHECK_THROWS_AS(analyze(1L, 50, std::plus<>{}), Error);
  CHECK_THROWS_AS(analyze(seven, 0), Error);
}

TEST_CASE("every self-map of a 4-element set against the power table") {
  std::vector<std::size_t> t(4);
  for (std::size_t code = 0; code < 256; ++code) {
    std::size_t c = code;
    for (auto& v : t) {
      v = c % 4;
      c /= 4;
    }
    FiniteMap const f(t);
    auto const      got = analyze(f, 1000);
    REQUIRE(power_table_profile(f, 1000) == got);

    // powers a, ..., a^{r+q-1} are pairwise distinct
    std::vector<FiniteMap> powers{f};
    for (std::size_t k = 1; k < got.order(); ++k) powers.push_back(powers.back() * f);
    for (std::size_t i = 0; i < powers.size(); ++i) {
      for (std::size_t j = i + 1; j < powers.size(); ++j) CHECK_FALSE(powers[i] == powers[j]);
    }
    // exactly one idempotent power
    std::size_t idempotents = 0;
    for (auto const& p : powers) idempotents += (p * p == p);
    CHECK(idempotents == 1);
    auto const e = semigroup_power(f, got.idempotent_exponent());
    CHECK(e * e == e);
  }
}

TEST_CASE("random maps up to size 12") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t const                          n = 1 + rng() % 12;
    std::vector<std::size_t>                   t(n);
    for (auto& v : t) v = rng() % n;
    FiniteMap const f(t);
    auto const      got = analyze(f, 10'000);
    REQUIRE(power_table_profile(f, 10'000) == got);
    auto const k = kernel_group(f, got);
    CHECK(k.size() == got.period);
  }
}

TEST_CASE("kernel group structure") {
  FiniteMap const f({1, 2, 3, 2, 0});
  auto const      profile = analyze(f, 100);
  auto const      k       = kernel_group(f, profile);
  REQUIRE(k.size() == 2);
  CHECK(k[0] == semigroup_power(f, 3));
  CHECK(k[1] == semigroup_power(f, 4));
  // neutral element is f^4, the idempotent
  CHECK(k[1] * k[1] == k[1]);

  FiniteMap const idem({0, 0, 2});
  auto const      ki = kernel_group(idem, analyze(idem, 10));
  REQUIRE(ki.size() == 1);
  CHECK(ki[0] == idem);

  FiniteMap const cycle({1, 2, 3, 0});
  auto const      kc = kernel_group(cycle, analyze(cycle, 10));
  CHECK(kc.size() == 4);
  CHECK(kc[3] == FiniteMap::identity(4));
}

TEST_CASE("kernel group rejects a wrong profile") {
  FiniteMap const f({1, 2, 3, 2, 0});
  CHECK_THROWS_AS(kernel_group(f, OrbitProfile{3, 3}), Error);
  CHECK_THROWS_AS(kernel_group(f, OrbitProfile{1, 2}), Error);
}

TEST_CASE("works for elements of other semigroups") {
  // multiplication modulo 12 on 2: 2, 4, 8, 4, ... index 2, period 2
  auto mul12 = [](int a, int b) { return a * b % 12; };
  CHECK(analyze(2, 100, mul12) == OrbitProfile{2, 2});
  auto const k = kernel_group(2, OrbitProfile{2, 2}, mul12);
  CHECK(k == std::vector<int>{4, 8});
}
