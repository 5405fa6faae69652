#include <catch_amalgamated.hpp>

#include <random>

#include "algdyn/matrix_dynamics.hpp"
#include "algdyn/verify.hpp"

using namespace algdyn;
using algdyn::sweeps::oracle::power_table_profile;

namespace {

  QMatrix diag_blocks(QMatrix const& a, QMatrix const& b) {
    QMatrix m(a.rows() + b.rows(), a.rows() + b.rows(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.rows(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.rows(); ++j) m(a.rows() + i, a.rows() + j) = b(i, j);
    return m;
  }

  std::size_t torsion_kind(QMatrix const& m) {
    auto r = is_torsion(m);
    return r.finite_order ? r.order : 0;
  }

}  // namespace

TEST_CASE("Fitting decomposition of basic matrices") {
  auto const id = fitting(QMatrix::identity(3, Rational(0)));
  CHECK(id.m == 1);
  CHECK(id.e == QMatrix::identity(3, Rational(0)));
  CHECK(id.g == QMatrix::identity(3, Rational(0)));

  QMatrix const jordan = qmatrix({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  auto const    nil    = fitting(jordan);
  CHECK(nil.m == 3);
  CHECK(nil.e == QMatrix(3, 3, Rational(0)));
  CHECK(nil.g == QMatrix(3, 3, Rational(0)));

  QMatrix const proj = qmatrix({{0, 0}, {1, 1}});
  auto const    p    = fitting(proj);
  CHECK(p.m == 1);
  CHECK(p.e == proj);

  CHECK_THROWS_AS(fitting(QMatrix(2, 3, Rational(0))), Error);
}

TEST_CASE("torsion recognition by cyclotomic factors") {
  CHECK(torsion_kind(QMatrix::identity(2, Rational(0))) == 1);
  CHECK(torsion_kind(qmatrix({{0, -1}, {1, 0}})) == 4);
  CHECK(torsion_kind(qmatrix({{-1, 0}, {0, -1}})) == 2);
  CHECK(torsion_kind(qmatrix({{0, -1}, {1, 1}})) == 6);
  CHECK(torsion_kind(qmatrix({{0, -1}, {1, -1}})) == 3);
  CHECK(torsion_kind(diag_blocks(qmatrix({{0, -1}, {1, 0}}), qmatrix({{0, -1}, {1, -1}}))) == 12);
  CHECK(torsion_kind(qmatrix({{1, 1}, {0, 1}})) == 0);
  CHECK(torsion_kind(qmatrix({{2, 0}, {0, 1}})) == 0);
  CHECK(torsion_kind(QMatrix(2, 2, Rational(0))) == 1);
  // a rank-one idempotent is the identity on its image
  CHECK(torsion_kind(qmatrix({{1, 1}, {0, 0}})) == 1);

  try {
    is_torsion(qmatrix({{0, 1}, {0, 0}}));
    FAIL("expected NotInvertibleOnImage");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::not_invertible_on_image);
  }
}

TEST_CASE("torsion order agrees with the orbit of g") {
  // signed permutation matrices have finite order
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t const        n = 1 + rng() % 5;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    QMatrix m(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) m(perm[i], i) = rng() % 2 ? 1 : -1;
    auto const tor = is_torsion(m);
    REQUIRE(tor.finite_order);
    auto const orbit = analyze(m, 10'000);
    CHECK(orbit.index == 1);
    CHECK(orbit.period == tor.order);
  }
}

TEST_CASE("decomposition report over a prime field") {
  FpMatrix const nil = reduce_mod(qmatrix({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}), 5);
  auto const     rn  = decomposition_report(nil, 1000);
  CHECK(rn.ok());
  CHECK(rn.m == 3);
  CHECK(rn.tail.size() == 2);
  REQUIRE(rn.kernel_group.size() == 1);
  CHECK(rn.kernel_group[0] == FpMatrix(3, 3, ModP(0, 5)));

  FpMatrix const idem = reduce_mod(qmatrix({{1, 1}, {0, 0}}), 7);
  auto const     ri   = decomposition_report(idem, 1000);
  CHECK(ri.ok());
  CHECK(ri.tail.empty());
  CHECK(ri.kernel_group.size() == 1);

  // swap ⊕ rank-one idempotent ⊕ 2x2 nilpotent block over F_7
  QMatrix const mixed = diag_blocks(diag_blocks(qmatrix({{0, 1}, {1, 0}}), qmatrix({{1, 1}, {0, 0}})),
                                    qmatrix({{0, 1}, {0, 0}}));
  FpMatrix const f  = reduce_mod(mixed, 7);
  auto const     rm = decomposition_report(f, 1000);
  CHECK(rm.ok());
  CHECK(rm.orbit == OrbitProfile{2, 2});
  CHECK(power_table_profile(f, 1000) == rm.orbit);
  // the only idempotent among the powers is e
  std::size_t idempotents = 0;
  FpMatrix    p           = f;
  for (std::size_t k = 1; k <= rm.orbit.order(); ++k, p = p * f) {
    if (p * p == p) {
      ++idempotents;
      CHECK(p == rm.e);
    }
  }
  CHECK(idempotents == 1);
}

TEST_CASE("decomposition over Q when g is torsion") {
  QMatrix const f  = diag_blocks(qmatrix({{0, -1}, {1, 0}}), qmatrix({{0, 1}, {0, 0}}));
  auto const    rq = decomposition_report(f, 1000);
  CHECK(rq.ok());
  CHECK(rq.orbit == OrbitProfile{2, 4});
  CHECK(rq.m == 2);
}

TEST_CASE("Fitting invariants on random rational matrices") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t const n = 1 + rng() % 5;
    QMatrix           f(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rng() % 2) f(i, j) = Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
    auto const fit = fitting(f);
    QMatrix    fm  = power(f, fit.m);
    CHECK(fit.m <= n);
    CHECK(fit.e * fit.e == fit.e);
    CHECK(fit.e * f == f * fit.e);
    CHECK(fm == fit.e * fm);
    CHECK(fit.image_basis.size() + fit.kernel_basis.size() == n);
    if (!fit.image_basis.empty()) CHECK(inverse(restrict_to(fit.g, fit.image_basis)).has_value());

    // over a prime not dividing any denominator, e mod p is the unique
    // idempotent power of f mod p whenever the reduction keeps the ranks
    FpMatrix const fp   = reduce_mod(f, 101);
    auto const     fitp = fitting(fp);
    if (fitp.m == fit.m && fitp.image_basis.size() == fit.image_basis.size()) {
      CHECK(fitp.e == reduce_mod(fit.e, 101));
      // the unit group part can have order up to 101^k - 1
      if (fitp.image_basis.size() <= 2) CHECK(decomposition_report(fp, 1'000'000).ok());
    }
  }
}

TEST_CASE("two involutions with product of infinite order") {
  auto const w = unbounded_product_witness(5);
  CHECK(w.ok());
  CHECK(w.fg_powers[5] == qmatrix({{1, 5}, {0, 1}}));
  CHECK(w.fg_powers[0] == QMatrix::identity(2, Rational(0)));
  CHECK(w.f * w.f == QMatrix::identity(2, Rational(0)));
}
