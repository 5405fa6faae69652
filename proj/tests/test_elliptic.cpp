#include <catch_amalgamated.hpp>

#include <random>

#include "algdyn/elliptic.hpp"
#include "algdyn/verify.hpp"

using namespace algdyn;
namespace oracle = algdyn::sweeps::oracle;

namespace {

  PointQ qp(long x, long y) {
    return q_point(Rational(x), Rational(y));
  }

  ErrorKind kind_of(std::function<void()> const& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::invalid_input;
  }

}  // namespace

TEST_CASE("group law over Q") {
  CurveQ const e(Rational(0), Rational(1));  // y^2 = x^3 + 1
  PointQ const p = qp(2, 3);
  CHECK(e.add(p, p) == qp(0, 1));
  CHECK(e.multiply(3, p) == qp(-1, 0));
  CHECK(e.multiply(6, p).infinity);
  CHECK(e.add(p, e.negate(p)).infinity);
  CHECK(order_of_q(e, p) == 6u);
  CHECK(order_of_q(e, PointQ::at_infinity()) == 1u);
  CHECK(order_of_q(e, qp(-1, 0)) == 2u);

  CurveQ const e2(Rational(0), Rational(-2));  // y^2 = x^3 - 2
  CHECK_FALSE(order_of_q(e2, qp(3, 5)).has_value());
  // 2P = (129/100, -383/1000)
  CHECK(e2.add(qp(3, 5), qp(3, 5)) == q_point(Rational(129, 100), Rational(-383, 1000)));

  CHECK(kind_of([] { CurveQ(Rational(0), Rational(0)); }) == ErrorKind::singular_curve);
  CHECK(kind_of([&] { order_of_q(e, qp(1, 1)); }) == ErrorKind::point_not_on_curve);
}

TEST_CASE("group law over F_p against the explicit table") {
  for (auto [p, a, b] : std::vector<std::array<std::int64_t, 3>>{{5, 1, 1}, {7, 3, 2}, {11, 1, 6}, {13, 2, 5}}) {
    auto const g   = oracle::group_table(p, a, b);
    auto const e   = make_curve_fp(p, a, b);
    auto const pts = enumerate_points(e);
    REQUIRE(pts.size() == g.size());
    auto idx = [&](PointFp const& q) -> std::size_t {
      return q.infinity ? 0 : g.index.at({q.x.value(), q.y.value()});
    };
    for (auto const& x : pts) {
      std::size_t ord = order_of_fp(e, x);
      CHECK(pts.size() % ord == 0);
      CHECK(ord == oracle::element_order(g, idx(x)));
      for (auto const& y : pts) CHECK(idx(e.add(x, y)) == g.add[idx(x)][idx(y)]);
    }
  }
}

TEST_CASE("points and Hasse bound") {
  auto const e = make_curve_fp(5, -1, 0);  // y^2 = x^3 - x
  auto const pts = enumerate_points(e);
  CHECK(pts.size() == 8);
  CHECK(pts.front().infinity);
  CHECK(std::is_sorted(pts.begin(), pts.end()));
  CHECK(hasse_bound(5) == 12);  // 5 + 1 + 2 * ceil(sqrt 5)
  CHECK(kind_of([] { make_curve_fp(3, 1, 1); }) == ErrorKind::invalid_input);
  CHECK(kind_of([] { make_curve_fp(9, 1, 1); }) == ErrorKind::non_prime_field);
}

TEST_CASE("translates of finite subgroups over Q") {
  CurveQ const e(Rational(-1), Rational(0));  // y^2 = x^3 - x, full 2-torsion
  std::vector<PointQ> two{PointQ::at_infinity(), qp(0, 0), qp(1, 0), qp(-1, 0)};

  auto const singles = decide_translate_subgroup(e, {{two[1]}, {two[2]}});
  CHECK(singles.yes);
  CHECK(singles.n == 1);
  CHECK(singles.subgroup == std::vector<PointQ>{PointQ::at_infinity()});

  auto const full = decide_translate_subgroup(e, {two});
  CHECK(full.yes);
  CHECK(full.n == 2);
  CHECK(full.subgroup.size() == 4);

  // any representative gives the same subgroup
  for (std::size_t r = 0; r < 4; ++r) {
    auto const other = decide_translate_subgroup(e, {two}, {r});
    CHECK(other.subgroup == full.subgroup);
    CHECK(other.n == 2);
  }

  CurveQ const e2(Rational(0), Rational(-2));
  auto const   no = decide_translate_subgroup(e2, {{qp(3, -5)}, {PointQ::at_infinity(), qp(3, 5)}});
  REQUIRE_FALSE(no.yes);
  CHECK(no.fiber_index == 1);
  for (std::int64_t k = 1; k <= 12; ++k) CHECK_FALSE(e2.multiply(k, no.witness_difference).infinity);

  CHECK(kind_of([&] { decide_translate_subgroup(e, {{two[1]}, {}}); }) == ErrorKind::empty_fiber);
  CHECK(kind_of([&] { decide_translate_subgroup(e, {{two[1]}, {two[1], two[2]}}); })
        == ErrorKind::fibers_not_disjoint);
  CHECK(kind_of([&] { decide_translate_subgroup(e, {{qp(2, 2)}}); }) == ErrorKind::point_not_on_curve);
  CHECK(kind_of([&] { decide_translate_subgroup(e, {{two[1]}}, {3}); }) == ErrorKind::invalid_input);
}

TEST_CASE("over F_p every configuration is a translate of a finite subgroup") {
  auto const      e   = make_curve_fp(11, 1, 6);
  auto const      pts = enumerate_points(e);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<std::vector<PointFp>> fibers;
    std::size_t const                 total = 1 + rng() % pts.size();
    for (std::size_t i = 0; i < total; ++i) {
      if (fibers.empty() || rng() % 3 == 0) fibers.emplace_back();
      fibers.back().push_back(shuffled[i]);
    }
    auto const d = decide_translate_subgroup(e, fibers);
    CHECK(d.yes);
    CHECK(pts.size() % d.subgroup.size() == 0);
  }
}

TEST_CASE("fixed points of z -> kz + z0") {
  auto const e   = make_curve_fp(11, 1, 6);
  auto const pts = enumerate_points(e);
  CHECK(fixed_point_of_translated_isogeny(e, 2, PointFp::at_infinity()) == PointFp::at_infinity());
  for (auto const& z0 : pts) {
    // k = 0: y = z0
    CHECK(fixed_point_of_translated_isogeny(e, 0, z0) == z0);
    auto const y = fixed_point_of_translated_isogeny(e, 2, z0);
    REQUIRE(y);
    CHECK(e.add(e.multiply(2, *y), z0) == *y);
  }
  // k = 1 with z0 != O has no solution
  CHECK_FALSE(fixed_point_of_translated_isogeny(e, 1, pts[1]).has_value());
}

TEST_CASE("multiplication by n on point groups") {
  auto const one = multiplication_degree_check(make_curve_fp(7, 3, 2), 1);
  CHECK(one.ok());
  CHECK(one.kernel_size == 1);
  CHECK(one.image_size == one.group_order);

  // y^2 = x^3 - x over F_5 has full 2-torsion
  auto const two = multiplication_degree_check(make_curve_fp(5, -1, 0), 2);
  CHECK(two.ok());
  CHECK(two.kernel_size == 4);

  for (std::size_t n = 1; n <= 6; ++n) CHECK(multiplication_degree_check(make_curve_fp(11, 1, 6), n).ok());
  CHECK_THROWS_AS(multiplication_degree_check(make_curve_fp(5, 1, 1), 0), Error);
}
