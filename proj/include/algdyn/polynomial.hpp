#pragma once

// Dense univariate polynomials over Q.  Coefficients are stored lowest
// degree first and kept trimmed (no trailing zeros); the zero polynomial is
// the empty vector.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "field.hpp"
#include "matrix.hpp"

namespace algdyn {

  class Polynomial {
   public:
    Polynomial() = default;

    explicit Polynomial(std::vector<Rational> coeffs) : _c(std::move(coeffs)) {
      trim();
    }

    static Polynomial monomial(std::size_t degree, Rational const& c = 1) {
      std::vector<Rational> v(degree + 1, Rational(0));
      v[degree] = c;
      return Polynomial(std::move(v));
    }

    bool is_zero() const noexcept {
      return _c.empty();
    }

    // -1 for the zero polynomial.
    long degree() const noexcept {
      return static_cast<long>(_c.size()) - 1;
    }

    Rational const& leading() const {
      return _c.back();
    }

    std::vector<Rational> const& coeffs() const noexcept {
      return _c;
    }

    Polynomial operator+(Polynomial const& o) const {
      std::vector<Rational> r(std::max(_c.size(), o._c.size()), Rational(0));
      for (std::size_t i = 0; i < _c.size(); ++i) r[i] += _c[i];
      for (std::size_t i = 0; i < o._c.size(); ++i) r[i] += o._c[i];
      return Polynomial(std::move(r));
    }

    Polynomial operator-(Polynomial const& o) const {
      std::vector<Rational> r(std::max(_c.size(), o._c.size()), Rational(0));
      for (std::size_t i = 0; i < _c.size(); ++i) r[i] += _c[i];
      for (std::size_t i = 0; i < o._c.size(); ++i) r[i] -= o._c[i];
      return Polynomial(std::move(r));
    }

    Polynomial operator*(Polynomial const& o) const {
      if (is_zero() || o.is_zero()) return {};
      std::vector<Rational> r(_c.size() + o._c.size() - 1, Rational(0));
      for (std::size_t i = 0; i < _c.size(); ++i) {
        for (std::size_t j = 0; j < o._c.size(); ++j) r[i + j] += _c[i] * o._c[j];
      }
      return Polynomial(std::move(r));
    }

    // Euclidean division; returns (quotient, remainder).
    std::pair<Polynomial, Polynomial> divmod(Polynomial const& d) const {
      if (d.is_zero()) {
        throw Error(ErrorKind::invalid_input, "polynomial division by zero");
      }
      std::vector<Rational> rem = _c;
      if (degree() < d.degree()) return {Polynomial(), *this};
      std::vector<Rational> quo(_c.size() - d._c.size() + 1, Rational(0));
      for (long k = degree() - d.degree(); k >= 0; --k) {
        Rational coef = rem[k + d._c.size() - 1] / d.leading();
        quo[k]        = coef;
        if (coef == 0) continue;
        for (std::size_t j = 0; j < d._c.size(); ++j) rem[k + j] -= coef * d._c[j];
      }
      return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
    }

    Polynomial derivative() const {
      std::vector<Rational> r;
      for (std::size_t i = 1; i < _c.size(); ++i) r.push_back(_c[i] * Rational(i));
      return Polynomial(std::move(r));
    }

    Polynomial monic() const {
      if (is_zero()) return {};
      std::vector<Rational> r = _c;
      Rational              l = leading();
      for (auto& x : r) x /= l;
      return Polynomial(std::move(r));
    }

    friend bool operator==(Polynomial const&, Polynomial const&) = default;

   private:
    void trim() {
      while (!_c.empty() && _c.back() == 0) _c.pop_back();
    }

    std::vector<Rational> _c;
  };

  inline Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      auto r = a.divmod(b).second;
      a      = std::move(b);
      b      = std::move(r);
    }
    return a.monic();
  }

  // Phi_d, built from x^d - 1 = prod_{e | d} Phi_e.
  inline Polynomial cyclotomic(std::size_t d) {
    Polynomial p = Polynomial::monomial(d) - Polynomial::monomial(0);
    for (std::size_t e = 1; e < d; ++e) {
      if (d % e == 0) p = p.divmod(cyclotomic(e)).first;
    }
    return p;
  }

  inline std::size_t euler_phi(std::size_t n) {
    std::size_t result = n;
    for (std::size_t p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        while (n % p == 0) n /= p;
        result -= result / p;
      }
    }
    if (n > 1) result -= result / n;
    return result;
  }

  // Minimal polynomial of a square matrix: the first linear dependency among
  // I, A, A^2, ... (flattened), made monic.
  inline Polynomial minimal_polynomial(Matrix<Rational> const& a) {
    std::size_t const n = a.rows();
    auto flatten = [n](Matrix<Rational> const& m) {
      std::vector<Rational> v;
      v.reserve(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) v.push_back(m(i, j));
      }
      return v;
    };
    std::vector<std::vector<Rational>> powers;
    Matrix<Rational>                   current = Matrix<Rational>::identity(n, Rational(0));
    for (std::size_t k = 0; k <= n; ++k) {
      powers.push_back(flatten(current));
      // columns: I, A, ..., A^{k-1}; target: A^k
      if (k > 0) {
        std::vector<std::vector<Rational>> cols(powers.begin(), powers.end() - 1);
        auto coords = solve_in_span(Matrix<Rational>::from_columns(cols), powers.back());
        if (coords) {
          std::vector<Rational> c(k + 1, Rational(0));
          for (std::size_t i = 0; i < k; ++i) c[i] = -(*coords)[i];
          c[k] = 1;
          return Polynomial(std::move(c));
        }
      }
      current = current * a;
    }
    throw Error(ErrorKind::invariant_violation, "no minimal polynomial of degree <= n");
  }

}  // namespace algdyn
