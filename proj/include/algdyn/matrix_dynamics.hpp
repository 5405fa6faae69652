#pragma once

// The linear model of a dynamical system: an exact square matrix f acting on
// k^n.  The eventual image (Fitting) decomposition k^n = im(f^m) + ker(f^m)
// gives the idempotent e of the cyclic semigroup, the tail length m, and the
// group generator g = e f.  Only this monoid-combinatorial shadow is
// computed; no Zariski closures are formed.

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "cyclic_semigroup.hpp"
#include "error.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"

namespace algdyn {

  using QMatrix = Matrix<Rational>;
  using FpMatrix = Matrix<ModP>;

  inline QMatrix qmatrix(std::vector<std::vector<long>> const& rows) {
    std::vector<std::vector<Rational>> r;
    for (auto const& row : rows) {
      r.emplace_back(row.begin(), row.end());
    }
    return QMatrix(r);
  }

  inline FpMatrix reduce_mod(QMatrix const& m, std::int64_t p) {
    FpMatrix r(m.rows(), m.cols(), ModP(0, p));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = reduce_mod(m(i, j), p);
    }
    return r;
  }

  template <typename T>
  struct FittingData {
    std::size_t            m;
    std::vector<Vector<T>> image_basis;
    std::vector<Vector<T>> kernel_basis;
    Matrix<T>              e;  // projection onto the image part along the kernel part
    Matrix<T>              g;  // e * f
  };

  template <typename T>
  FittingData<T> fitting(Matrix<T> const& f) {
    if (!f.is_square()) {
      throw Error(ErrorKind::malformed_matrix,
                  "matrix must be square, got " + std::to_string(f.rows()) + "x"
                      + std::to_string(f.cols()));
    }
    std::size_t const n = f.rows();
    // f^m with m the least positive integer with rank f^m = rank f^{m+1};
    // since im f^{m+1} is inside im f^m, equal ranks mean equal images.
    Matrix<T>   fm   = f;
    std::size_t rk   = rank(fm);
    std::size_t m    = 1;
    while (true) {
      Matrix<T>   next    = fm * f;
      std::size_t rk_next = rank(next);
      if (rk_next == rk) break;
      fm = std::move(next);
      rk = rk_next;
      ++m;
    }
    FittingData<T> data{m, column_space_basis(fm), null_space_basis(fm), f, f};

    T const                zero = zero_like(f.proto());
    std::vector<Vector<T>> cols = data.image_basis;
    cols.insert(cols.end(), data.kernel_basis.begin(), data.kernel_basis.end());
    if (cols.size() != n) {
      throw Error(ErrorKind::invariant_violation, "Fitting bases do not span");
    }
    Matrix<T> basis = Matrix<T>::from_columns(cols);
    auto      inv   = inverse(basis);
    if (!inv) {
      throw Error(ErrorKind::invariant_violation, "Fitting bases are not independent");
    }
    Matrix<T> diag(n, n, zero);
    for (std::size_t i = 0; i < data.image_basis.size(); ++i) diag(i, i) = one_like(zero);
    data.e = basis * diag * *inv;
    data.g = data.e * f;
    return data;
  }

  // Matrix of f restricted to the span of `basis` (assumed f-invariant),
  // in the coordinates of that basis.
  template <typename T>
  Matrix<T> restrict_to(Matrix<T> const& f, std::vector<Vector<T>> const& basis) {
    Matrix<T> b = Matrix<T>::from_columns(basis);
    Matrix<T> r(basis.size(), basis.size(), zero_like(f.proto()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto coords = solve_in_span(b, f * basis[j]);
      if (!coords) {
        throw Error(ErrorKind::invariant_violation, "subspace is not invariant");
      }
      for (std::size_t i = 0; i < basis.size(); ++i) r(i, j) = (*coords)[i];
    }
    return r;
  }

  struct TorsionResult {
    bool        finite_order = false;
    std::size_t order        = 0;  // meaningful when finite_order
    Polynomial  minimal_polynomial;
    // d with Phi_d dividing the minimal polynomial (when finite_order)
    std::vector<std::size_t> cyclotomic_orders;
  };

  // Decides whether g has finite order on its image im(g), i.e. whether some
  // g^k is the idempotent of <g>.  The restriction must be invertible.  The
  // criterion: the minimal polynomial of the restriction is squarefree and a
  // product of cyclotomic polynomials; k is the lcm of their orders.
  inline TorsionResult is_torsion(QMatrix const& g) {
    if (!g.is_square()) {
      throw Error(ErrorKind::malformed_matrix, "matrix must be square");
    }
    auto          image = column_space_basis(g);
    TorsionResult result;
    if (image.empty()) {
      result.finite_order       = true;
      result.order              = 1;
      result.minimal_polynomial = Polynomial::monomial(0);
      return result;
    }
    if (rank(g * g) != image.size()) {
      throw Error(ErrorKind::not_invertible_on_image,
                  "matrix is singular on its image");
    }
    QMatrix    r  = restrict_to(g, image);
    Polynomial mu = minimal_polynomial(r);
    result.minimal_polynomial = mu;
    if (gcd(mu, mu.derivative()).degree() > 0) {
      return result;
    }
    std::size_t const k         = image.size();
    Polynomial        remaining = mu;
    std::size_t       order     = 1;
    for (std::size_t d = 1; d <= 2 * k * k + 2 && remaining.degree() > 0; ++d) {
      if (euler_phi(d) > k) continue;
      auto [q, rem] = remaining.divmod(cyclotomic(d));
      if (rem.is_zero()) {
        remaining = q;
        order     = std::lcm(order, d);
        result.cyclotomic_orders.push_back(d);
      }
    }
    if (remaining.degree() == 0) {
      result.finite_order = true;
      result.order        = order;
    } else {
      result.cyclotomic_orders.clear();
    }
    return result;
  }

  template <typename T>
  struct DecompositionReport {
    std::size_t            m = 0;
    OrbitProfile           orbit;
    std::vector<Matrix<T>> tail;          // f, ..., f^{m-1}
    std::vector<Matrix<T>> kernel_group;  // f^r, ..., f^{r+q-1}
    Matrix<T>              e;

    bool tail_pairwise_distinct = false;
    bool tail_disjoint_from_group = false;
    bool neutral_equals_e = false;
    bool index_equals_m = false;

    bool ok() const noexcept {
      return tail_pairwise_distinct && tail_disjoint_from_group && neutral_equals_e
             && index_equals_m;
    }
  };

  // S(f) = {f, ..., f^{m-1}} disjoint union with the kernel group, checked on
  // the actual powers.  Requires <f> finite within the budget (always true
  // over a prime field).
  template <typename T>
  DecompositionReport<T> decomposition_report(Matrix<T> const& f, std::size_t budget) {
    FittingData<T> fit = fitting(f);
    OrbitProfile   orbit = analyze(f, budget);

    DecompositionReport<T> report{fit.m, orbit, {}, {}, fit.e};
    report.kernel_group = kernel_group(f, orbit);
    for (std::size_t k = 1; k < orbit.index; ++k) {
      report.tail.push_back(k == 1 ? f : report.tail.back() * f);
    }
    report.tail_pairwise_distinct = true;
    for (std::size_t i = 0; i < report.tail.size(); ++i) {
      for (std::size_t j = i + 1; j < report.tail.size(); ++j) {
        if (report.tail[i] == report.tail[j]) report.tail_pairwise_distinct = false;
      }
    }
    report.tail_disjoint_from_group = true;
    for (auto const& a : report.tail) {
      for (auto const& b : report.kernel_group) {
        if (a == b) report.tail_disjoint_from_group = false;
      }
    }
    std::size_t const t = orbit.idempotent_exponent();
    report.neutral_equals_e
        = report.kernel_group[(t - orbit.index) % orbit.period] == fit.e;
    report.index_equals_m = orbit.index == fit.m;
    return report;
  }

  struct ProductWitness {
    QMatrix              f;
    QMatrix              g;
    std::size_t          nmax = 0;
    std::vector<QMatrix> fg_powers;  // (fg)^0, ..., (fg)^nmax
    bool                 f_squared_identity = false;
    bool                 g_squared_identity = false;
    bool                 powers_match_formula = false;  // (fg)^n = [[1,n],[0,1]]
    bool                 powers_pairwise_distinct = false;
    bool                 fg_infinite_order = false;  // by the cyclotomic criterion

    bool ok() const noexcept {
      return f_squared_identity && g_squared_identity && powers_match_formula
             && powers_pairwise_distinct && fg_infinite_order;
    }
  };

  // Two involutions in GL_2(Z) whose product has infinite order.
  inline ProductWitness unbounded_product_witness(std::size_t nmax) {
    ProductWitness w{qmatrix({{-1, 1}, {0, 1}}), qmatrix({{-1, 0}, {0, 1}}), nmax, {}};
    QMatrix const  id = QMatrix::identity(2, Rational(0));
    w.f_squared_identity = w.f * w.f == id;
    w.g_squared_identity = w.g * w.g == id;

    QMatrix const fg = w.f * w.g;
    w.fg_powers.push_back(id);
    for (std::size_t n = 1; n <= nmax; ++n) w.fg_powers.push_back(w.fg_powers.back() * fg);

    w.powers_match_formula = true;
    for (std::size_t n = 0; n <= nmax; ++n) {
      QMatrix expected = qmatrix({{1, static_cast<long>(n)}, {0, 1}});
      if (w.fg_powers[n] != expected) w.powers_match_formula = false;
    }
    w.powers_pairwise_distinct = true;
    for (std::size_t i = 1; i <= nmax; ++i) {
      for (std::size_t j = i + 1; j <= nmax; ++j) {
        if (w.fg_powers[i] == w.fg_powers[j]) w.powers_pairwise_distinct = false;
      }
    }
    w.fg_infinite_order = !is_torsion(fg).finite_order;
    return w;
  }

}  // namespace algdyn
