#pragma once

// JSON readers and writers for the CLI input formats.  Scalars are JSON
// integers or "p/q" strings; floats are refused so no precision is lost.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cone_geometry.hpp"
#include "cyclic_semigroup.hpp"
#include "elliptic.hpp"
#include "error.hpp"
#include "field.hpp"
#include "finite_dynamics.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"

namespace algdyn::io {

  using json = nlohmann::json;

  inline Error bad(std::string const& what) {
    return Error(ErrorKind::invalid_input, what);
  }

  inline json const& field_of(json const& j, char const* key) {
    if (!j.is_object() || !j.contains(key)) {
      throw bad(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
  }

  inline Rational to_rational(json const& j) {
    if (j.is_number_integer()) {
      return j.is_number_unsigned() ? Rational(j.get<std::uint64_t>())
                                    : Rational(j.get<std::int64_t>());
    }
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw bad("expected an integer or a \"p/q\" string, got " + j.dump());
  }

  inline std::int64_t to_int(json const& j, char const* what) {
    if (!j.is_number_integer()) throw bad(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
  }

  inline std::size_t to_size(json const& j, char const* what) {
    std::int64_t v = to_int(j, what);
    if (v < 0) throw bad(std::string(what) + " must be nonnegative");
    return static_cast<std::size_t>(v);
  }

  inline std::vector<std::size_t> to_index_list(json const& j, char const* what) {
    if (!j.is_array()) throw bad(std::string(what) + " must be an array");
    std::vector<std::size_t> out;
    for (auto const& v : j) out.push_back(to_size(v, what));
    return out;
  }

  // "Q" or {"Fp": p}; nullopt means Q.
  inline std::optional<std::int64_t> to_field(json const& j) {
    if (j.is_string() && j.get<std::string>() == "Q") return std::nullopt;
    if (j.is_object() && j.contains("Fp")) {
      std::int64_t p = to_int(j.at("Fp"), "Fp");
      if (!is_prime(p)) throw Error(ErrorKind::non_prime_field, std::to_string(p) + " is not prime");
      return p;
    }
    throw bad("field must be \"Q\" or {\"Fp\": p}");
  }

  inline json to_json(Rational const& x) {
    return to_string(x);
  }

  inline json to_json(ModP const& x) {
    return x.value();
  }

  template <typename T>
  json to_json(Vector<T> const& v) {
    json a = json::array();
    for (auto const& x : v) a.push_back(to_json(x));
    return a;
  }

  template <typename T>
  json to_json(Matrix<T> const& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
    return a;
  }

  template <typename T>
  json to_json(std::vector<Vector<T>> const& vs) {
    json a = json::array();
    for (auto const& v : vs) a.push_back(to_json(v));
    return a;
  }

  inline json to_json(OrbitProfile const& o) {
    return {{"index", o.index},
            {"period", o.period},
            {"order", o.order()},
            {"idempotent_exponent", o.idempotent_exponent()}};
  }

  inline json to_json(Polynomial const& p) {
    json a = json::array();
    for (auto const& c : p.coeffs()) a.push_back(to_string(c));
    return a;
  }

  // -- matrices ----------------------------------------------------------------

  struct MatrixInput {
    std::optional<std::int64_t> prime;  // nullopt: over Q
    Matrix<Rational>            entries;
  };

  inline Matrix<Rational> to_qmatrix(json const& rows) {
    if (!rows.is_array() || rows.empty()) throw Error(ErrorKind::malformed_matrix, "entries must be a nonempty array of rows");
    std::vector<std::vector<Rational>> r;
    for (auto const& row : rows) {
      if (!row.is_array()) throw Error(ErrorKind::malformed_matrix, "each row must be an array");
      r.emplace_back();
      for (auto const& x : row) r.back().push_back(to_rational(x));
    }
    return Matrix<Rational>(r);
  }

  // {"n": int, "entries": [[...], ...], "field": "Q" | {"Fp": p}}
  inline MatrixInput to_matrix_input(json const& j) {
    MatrixInput in{j.contains("field") ? to_field(j.at("field")) : std::nullopt,
                   to_qmatrix(field_of(j, "entries"))};
    if (j.contains("n")) {
      std::size_t n = to_size(j.at("n"), "n");
      if (in.entries.rows() != n || in.entries.cols() != n) {
        throw Error(ErrorKind::malformed_matrix, "entries are not " + std::to_string(n) + "x" + std::to_string(n));
      }
    }
    return in;
  }

  // -- cones -------------------------------------------------------------------

  // {"d": int, "generators": [[...], ...]}
  inline PolyCone to_cone(json const& j) {
    std::size_t          d = to_size(field_of(j, "d"), "d");
    std::vector<QVector> gens;
    auto const&          g = field_of(j, "generators");
    if (!g.is_array()) throw bad("generators must be an array");
    for (auto const& v : g) {
      if (!v.is_array()) throw bad("each generator must be an array");
      gens.emplace_back();
      for (auto const& x : v) gens.back().push_back(to_rational(x));
    }
    return PolyCone(d, std::move(gens));
  }

  inline json to_json(PolyCone const& c) {
    return {{"d", c.dim()}, {"generators", to_json(c.generators())}};
  }

  // -- finite maps -------------------------------------------------------------

  // {"N": int, "table": [...]}
  inline FiniteMap to_finite_map(json const& j) {
    auto t = to_index_list(field_of(j, "table"), "table entry");
    if (j.contains("N") && to_size(j.at("N"), "N") != t.size()) {
      throw bad("table length differs from N");
    }
    return FiniteMap(std::move(t));
  }

  // {"p": int, "n": int, "polys": [...], "space": "affine" | "projective"}
  inline PolynomialMapModel to_polynomial_map(json const& j) {
    std::int64_t p = to_int(field_of(j, "p"), "p");
    std::size_t  n = to_size(field_of(j, "n"), "n");
    std::vector<std::string> polys;
    for (auto const& s : field_of(j, "polys")) {
      if (!s.is_string()) throw bad("polys must be strings");
      polys.push_back(s.get<std::string>());
    }
    Space space = Space::affine;
    if (j.contains("space")) {
      std::string s = j.at("space").is_string() ? j.at("space").get<std::string>() : "";
      if (s == "projective") space = Space::projective;
      else if (s != "affine") throw bad("space must be \"affine\" or \"projective\"");
    }
    return from_polynomial_map(p, n, polys, space);
  }

  // -- elliptic curves -----------------------------------------------------------

  template <typename T>
  ECPoint<T> to_point(json const& j, Curve<T> const& e) {
    if (j.is_string() && j.get<std::string>() == "O") return ECPoint<T>::at_infinity();
    if (!j.is_array() || j.size() != 2) throw bad("a point is \"O\" or [x, y]");
    Rational x = to_rational(j[0]), y = to_rational(j[1]);
    ECPoint<T> pt;
    if constexpr (std::is_same_v<T, Rational>) {
      pt = ECPoint<T>::affine(x, y);
    } else {
      std::int64_t p = e.a().modulus();
      pt             = ECPoint<T>::affine(reduce_mod(x, p), reduce_mod(y, p));
    }
    e.require_on_curve(pt);
    return pt;
  }

  template <typename T>
  json to_json(ECPoint<T> const& p) {
    if (p.infinity) return "O";
    return json::array({to_json(p.x), to_json(p.y)});
  }

  template <typename T>
  json to_json(std::vector<ECPoint<T>> const& pts) {
    json a = json::array();
    for (auto const& p : pts) a.push_back(to_json(p));
    return a;
  }

}  // namespace algdyn::io
