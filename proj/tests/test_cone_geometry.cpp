#include <catch_amalgamated.hpp>

#include <random>

#include "algdyn/cone_geometry.hpp"
#include "algdyn/matrix_dynamics.hpp"

using namespace algdyn;

namespace {

  QVector v(std::initializer_list<long> xs) {
    return QVector(xs.begin(), xs.end());
  }

  PolyCone cone(std::size_t d, std::initializer_list<QVector> gens) {
    return PolyCone(d, std::vector<QVector>(gens));
  }

  QVector add(QVector a, QVector const& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  }

}  // namespace

TEST_CASE("span and facets of simple cones") {
  auto const quad = PolyCone::orthant(2);
  CHECK(span(quad).dim() == 2);
  CHECK(facets(quad).normals.size() == 2);
  CHECK(contains(quad, v({1, 2})));
  CHECK_FALSE(contains(quad, v({1, -1})));

  // a line: lineality space only
  auto const line = cone(2, {v({1, 1}), v({-1, -1})});
  CHECK(span(line).dim() == 1);
  CHECK(contains(line, v({-3, -3})));
  CHECK_FALSE(contains(line, v({1, 0})));

  // half-plane y >= 0
  auto const half = cone(2, {v({1, 0}), v({-1, 0}), v({0, 1})});
  CHECK(contains(half, v({-5, 1})));
  CHECK_FALSE(contains(half, v({0, -1})));

  CHECK(span(PolyCone::zero(3)).dim() == 0);
  CHECK(contains(PolyCone::zero(3), v({0, 0, 0})));
  CHECK_FALSE(contains(PolyCone::zero(3), v({0, 1, 0})));
}

TEST_CASE("double description reproduces a square pyramid") {
  // cone over a square: four extreme rays, four facets
  auto const c = cone(3, {v({1, 0, 1}), v({0, 1, 1}), v({-1, 0, 1}), v({0, -1, 1})});
  CHECK(facets(c).normals.size() == 4);
  CHECK(enumerate_faces(c).size() == 10);  // apex, 4 rays, 4 facets, the cone
  CHECK(contains(c, v({0, 0, 1})));
  CHECK_FALSE(contains(c, v({1, 1, 1})));
  auto const again = PolyCone(3, cone_from_inequalities(3, facets(c).normals));
  CHECK(cones_equal(c, again));
}

TEST_CASE("extremal subcones are exactly the faces") {
  auto const quad = PolyCone::orthant(2);
  CHECK(is_extremal(cone(2, {v({1, 0})}), quad).extremal);
  CHECK(is_extremal(PolyCone::zero(2), quad).extremal);
  CHECK(is_extremal(quad, quad).extremal);

  auto const diag = is_extremal(cone(2, {v({1, 1})}), quad);
  CHECK_FALSE(diag.extremal);
  REQUIRE(diag.witness);
  auto const& [a, b] = *diag.witness;
  CHECK(contains(quad, a));
  CHECK(contains(quad, b));
  CHECK(contains(cone(2, {v({1, 1})}), add(a, b)));
  CHECK_FALSE(contains(cone(2, {v({1, 1})}), a));
  // the diagonal ray equals C ∩ span(T) and is still not a face
  CHECK(diag.equals_cone_cap_span);

  try {
    is_extremal(cone(2, {v({-1, 0})}), quad);
    FAIL("expected NotASubcone");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::not_a_subcone);
    CHECK(e.index() == 0);
  }
}

TEST_CASE("faces of the 3-orthant") {
  auto const faces = enumerate_faces(PolyCone::orthant(3));
  CHECK(faces.size() == 8);
  for (auto const& f : faces) {
    CHECK(cones_equal(f, intersect_subspace(PolyCone::orthant(3), span(f))));
    CHECK(is_extremal(f, PolyCone::orthant(3)).extremal);
  }
}

TEST_CASE("differences of cone elements fill the span") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t const    d = 1 + rng() % 4;
    std::vector<QVector> gens;
    for (std::size_t k = 0; k < 1 + rng() % (d + 2); ++k) {
      QVector g(d, Rational(0));
      for (auto& x : g) x = static_cast<long>(rng() % 5) - 2;
      bool nz = false;
      for (auto& x : g) nz = nz || x != 0;
      if (nz) gens.push_back(g);
    }
    if (gens.empty()) continue;
    PolyCone const c(d, gens);
    // every basis vector b of the span is x - y with x, y in C
    for (auto const& b : span(c).basis) {
      auto coords = solve_in_span(Matrix<Rational>::from_columns(gens), b);
      REQUIRE(coords);
      QVector x(d, Rational(0)), y(d, Rational(0));
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Rational const& t = (*coords)[i];
        for (std::size_t k = 0; k < d; ++k) (t > 0 ? x : y)[k] += (t > 0 ? t : -t) * gens[i][k];
      }
      CHECK(contains(c, x));
      CHECK(contains(c, y));
      for (std::size_t k = 0; k < d; ++k) CHECK(x[k] - y[k] == b[k]);
    }
  }
}

TEST_CASE("chains of faces") {
  auto const o3 = PolyCone::orthant(3);
  auto const r1 = cone(3, {v({1, 0, 0})});
  auto const f2 = cone(3, {v({1, 0, 0}), v({0, 1, 0})});
  auto const st = chain_stabilization({PolyCone::zero(3), r1, r1, f2, o3, o3}, o3);
  CHECK(st.index == 4);
  CHECK(st.strict_increases == 3);
  CHECK(chain_stabilization({r1, r1, r1}, o3).index == 0);
  CHECK(chain_stabilization({r1, f2, f2}, o3).index == 1);
  CHECK(st.span_dims == std::vector<std::size_t>{0, 1, 1, 2, 3, 3});

  try {
    chain_stabilization({f2, r1}, o3);
    FAIL("expected NotIncreasing");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::not_increasing);
    CHECK(e.index() == 1);
  }
  try {
    chain_stabilization({r1, cone(3, {v({1, 1, 0})})}, o3);
    FAIL("expected NotExtremal");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::not_extremal);
    CHECK(e.index() == 1);
  }
}

TEST_CASE("relative cone chains") {
  // nilpotent shift e3 -> e2 -> e1 -> 0 on the orthant
  QMatrix const m  = qmatrix({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  auto const    ch = relative_cone_chain(PolyCone::orthant(3), m, 5);
  CHECK(ch.kernel_dims == std::vector<std::size_t>{1, 2, 3, 3, 3});
  CHECK(ch.kernel_stable_at == 3);
  CHECK(ch.cone_stable_at == 3);
  CHECK(cones_equal(ch.cones[0], cone(3, {v({1, 0, 0})})));

  QMatrix const m2 = qmatrix({{0, 1}, {0, 0}});
  auto const    c  = cone(2, {v({1, 0}), v({1, 1})});
  auto const    ch2 = relative_cone_chain(c, m2, 3);
  CHECK(ch2.kernel_stable_at == 2);
  CHECK(ch2.cone_stable_at == 2);

  auto const ray = cone(2, {v({1, 1})});
  auto const ch3 = relative_cone_chain(ray, m2, 3);
  CHECK(ch3.cone_stable_at == 2);
  // a cone inside ker M settles before the kernels do
  auto const ch4 = relative_cone_chain(cone(2, {v({1, 0}), v({-1, 0})}), m2, 3);
  CHECK(ch4.cone_stable_at == 1);
  CHECK(ch4.kernel_stable_at == 2);

  CHECK_THROWS_AS(relative_cone_chain(PolyCone::orthant(2), m, 3), Error);
}

TEST_CASE("subspace intersection validates dimensions") {
  Subspace w{3, {v({1, 0, 0})}};
  CHECK_THROWS_AS(intersect_subspace(PolyCone::orthant(2), w), Error);
  CHECK_THROWS_AS(PolyCone(2, {v({0, 0})}), Error);
  CHECK_THROWS_AS(PolyCone(2, {v({1, 0, 0})}), Error);
}
