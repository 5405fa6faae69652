#pragma once

// Dense matrices over an exact field (Rational or ModP) with the elimination
// routines the dynamics modules need: rank, column space, null space,
// inverse.  No pivoting tolerances: arithmetic is exact.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace algdyn {

  template <typename T>
  using Vector = std::vector<T>;

  template <typename T>
  class Matrix {
   public:
    Matrix(std::size_t rows, std::size_t cols, T const& fill)
        : _rows(rows), _cols(cols), _data(rows * cols, fill) {}

    explicit Matrix(std::vector<std::vector<T>> const& rows) {
      if (rows.empty() || rows.front().empty()) {
        throw Error(ErrorKind::malformed_matrix, "matrix must be nonempty");
      }
      _rows = rows.size();
      _cols = rows.front().size();
      _data.reserve(_rows * _cols);
      for (auto const& r : rows) {
        if (r.size() != _cols) {
          throw Error(ErrorKind::malformed_matrix, "ragged matrix rows");
        }
        _data.insert(_data.end(), r.begin(), r.end());
      }
    }

    static Matrix identity(std::size_t n, T const& proto) {
      Matrix m(n, n, zero_like(proto));
      for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = one_like(proto);
      }
      return m;
    }

    // Columns become the columns of the result.  Needs at least one column.
    static Matrix from_columns(std::vector<Vector<T>> const& cols) {
      Matrix m(cols.front().size(), cols.size(), zero_like(cols.front().front()));
      for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < m._rows; ++i) {
          m(i, j) = cols[j][i];
        }
      }
      return m;
    }

    std::size_t rows() const noexcept {
      return _rows;
    }

    std::size_t cols() const noexcept {
      return _cols;
    }

    bool is_square() const noexcept {
      return _rows == _cols;
    }

    T& operator()(std::size_t i, std::size_t j) {
      return _data[i * _cols + j];
    }

    T const& operator()(std::size_t i, std::size_t j) const {
      return _data[i * _cols + j];
    }

    T const& proto() const {
      return _data.front();
    }

    Vector<T> column(std::size_t j) const {
      Vector<T> v;
      v.reserve(_rows);
      for (std::size_t i = 0; i < _rows; ++i) v.push_back((*this)(i, j));
      return v;
    }

    Vector<T> row(std::size_t i) const {
      return Vector<T>(_data.begin() + i * _cols, _data.begin() + (i + 1) * _cols);
    }

    Matrix transpose() const {
      Matrix t(_cols, _rows, zero_like(proto()));
      for (std::size_t i = 0; i < _rows; ++i) {
        for (std::size_t j = 0; j < _cols; ++j) {
          t(j, i) = (*this)(i, j);
        }
      }
      return t;
    }

    Matrix operator*(Matrix const& o) const {
      if (_cols != o._rows) {
        throw Error(ErrorKind::dimension_mismatch, "matrix product shape mismatch");
      }
      Matrix r(_rows, o._cols, zero_like(proto()));
      for (std::size_t i = 0; i < _rows; ++i) {
        for (std::size_t k = 0; k < _cols; ++k) {
          T const& a = (*this)(i, k);
          if (is_zero(a)) continue;
          for (std::size_t j = 0; j < o._cols; ++j) {
            r(i, j) += a * o(k, j);
          }
        }
      }
      return r;
    }

    Vector<T> operator*(Vector<T> const& v) const {
      if (v.size() != _cols) {
        throw Error(ErrorKind::dimension_mismatch, "matrix-vector shape mismatch");
      }
      Vector<T> r(_rows, zero_like(proto()));
      for (std::size_t i = 0; i < _rows; ++i) {
        for (std::size_t j = 0; j < _cols; ++j) {
          r[i] += (*this)(i, j) * v[j];
        }
      }
      return r;
    }

    Matrix operator+(Matrix const& o) const {
      Matrix r = *this;
      for (std::size_t i = 0; i < _data.size(); ++i) r._data[i] += o._data[i];
      return r;
    }

    Matrix operator-(Matrix const& o) const {
      Matrix r = *this;
      for (std::size_t i = 0; i < _data.size(); ++i) r._data[i] -= o._data[i];
      return r;
    }

    bool is_zero_matrix() const {
      for (auto const& x : _data) {
        if (!is_zero(x)) return false;
      }
      return true;
    }

    friend bool operator==(Matrix const& a, Matrix const& b) {
      return a._rows == b._rows && a._cols == b._cols && a._data == b._data;
    }

    friend bool operator!=(Matrix const& a, Matrix const& b) {
      return !(a == b);
    }

    std::string str() const {
      std::ostringstream os;
      os << '[';
      for (std::size_t i = 0; i < _rows; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < _cols; ++j) {
          os << (j ? "," : "") << to_string((*this)(i, j));
        }
        os << ']';
      }
      os << ']';
      return os.str();
    }

   private:
    std::size_t    _rows = 0;
    std::size_t    _cols = 0;
    std::vector<T> _data;
  };

  template <typename T>
  Matrix<T> power(Matrix<T> const& a, std::size_t k) {
    Matrix<T> result = Matrix<T>::identity(a.rows(), a.proto());
    Matrix<T> base   = a;
    while (k > 0) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return result;
  }

  // Reduced row echelon form in place; returns the pivot columns.
  template <typename T>
  std::vector<std::size_t> rref(Matrix<T>& m) {
    std::vector<std::size_t> pivots;
    std::size_t              row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
      std::size_t sel = row;
      while (sel < m.rows() && is_zero(m(sel, col))) ++sel;
      if (sel == m.rows()) continue;
      if (sel != row) {
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
      }
      T inv = one_like(m(row, col)) / m(row, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i == row || is_zero(m(i, col))) continue;
        T factor = m(i, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  template <typename T>
  std::size_t rank(Matrix<T> m) {
    return rref(m).size();
  }

  // A basis of the column space, taken from the original pivot columns.
  template <typename T>
  std::vector<Vector<T>> column_space_basis(Matrix<T> const& m) {
    Matrix<T>              r      = m;
    auto                   pivots = rref(r);
    std::vector<Vector<T>> basis;
    for (auto c : pivots) basis.push_back(m.column(c));
    return basis;
  }

  template <typename T>
  std::vector<Vector<T>> null_space_basis(Matrix<T> const& m) {
    Matrix<T>              r      = m;
    auto                   pivots = rref(r);
    std::vector<bool>      is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vector<T>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
      if (is_pivot[free]) continue;
      Vector<T> v(m.cols(), zero_like(m.proto()));
      v[free] = one_like(m.proto());
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        v[pivots[i]] = -r(i, free);
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

  template <typename T>
  std::optional<Matrix<T>> inverse(Matrix<T> const& m) {
    if (!m.is_square()) {
      throw Error(ErrorKind::malformed_matrix, "inverse of a non-square matrix");
    }
    std::size_t n = m.rows();
    Matrix<T>   aug(n, 2 * n, zero_like(m.proto()));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
      aug(i, n + i) = one_like(m.proto());
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) {
      return std::nullopt;
    }
    Matrix<T> inv(n, n, zero_like(m.proto()));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    }
    return inv;
  }

  // Solves basis * coords = v for a full-column-rank basis matrix.  Returns
  // nullopt when v is outside the column space.
  template <typename T>
  std::optional<Vector<T>> solve_in_span(Matrix<T> const& basis, Vector<T> const& v) {
    std::size_t n = basis.rows(), k = basis.cols();
    Matrix<T>   aug(n, k + 1, zero_like(basis.proto()));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < k; ++j) aug(i, j) = basis(i, j);
      aug(i, k) = v[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == k) return std::nullopt;
    Vector<T> coords(k, zero_like(basis.proto()));
    for (std::size_t i = 0; i < pivots.size(); ++i) coords[pivots[i]] = aug(i, k);
    return coords;
  }

  template <typename T>
  std::size_t rank_of_vectors(std::vector<Vector<T>> const& vs) {
    if (vs.empty()) return 0;
    return rank(Matrix<T>(vs));
  }

  template <typename T>
  bool in_span(std::vector<Vector<T>> const& basis, Vector<T> const& v) {
    if (basis.empty()) {
      for (auto const& x : v) {
        if (!is_zero(x)) return false;
      }
      return true;
    }
    auto with = basis;
    with.push_back(v);
    return rank_of_vectors(with) == rank_of_vectors(basis);
  }

}  // namespace algdyn
