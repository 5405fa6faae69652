#pragma once

// Dynamical systems on finite sets: a self-map of {0, ..., N-1} given by its
// table.  Iterated images, the restriction to the eventual image, point
// tables of polynomial maps over prime fields, and the product map used to
// realise a prescribed iterated image.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cyclic_semigroup.hpp"
#include "error.hpp"
#include "field.hpp"

namespace algdyn {

  class FiniteMap {
   public:
    FiniteMap() = default;

    explicit FiniteMap(std::vector<std::size_t> table) : _table(std::move(table)) {
      if (_table.empty()) {
        throw Error(ErrorKind::invalid_input, "finite map needs at least one point");
      }
      for (std::size_t i = 0; i < _table.size(); ++i) {
        if (_table[i] >= _table.size()) {
          throw Error(ErrorKind::invalid_input,
                      "table entry " + std::to_string(i) + " out of range", i);
        }
      }
    }

    static FiniteMap identity(std::size_t n) {
      std::vector<std::size_t> t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = i;
      return FiniteMap(std::move(t));
    }

    std::size_t size() const noexcept {
      return _table.size();
    }

    std::size_t operator()(std::size_t x) const {
      return _table[x];
    }

    std::vector<std::size_t> const& table() const noexcept {
      return _table;
    }

    // (f * g)(x) = f(g(x))
    FiniteMap operator*(FiniteMap const& g) const {
      std::vector<std::size_t> t(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) t[i] = _table[g._table[i]];
      FiniteMap r;
      r._table = std::move(t);
      return r;
    }

    // Sorted image of a sorted subset.
    std::vector<std::size_t> image(std::vector<std::size_t> const& subset) const {
      std::vector<std::size_t> out;
      out.reserve(subset.size());
      for (auto x : subset) out.push_back(_table[x]);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }

    bool is_bijective() const {
      std::vector<bool> hit(size(), false);
      for (auto y : _table) hit[y] = true;
      return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    }

    friend bool operator==(FiniteMap const&, FiniteMap const&) = default;

   private:
    std::vector<std::size_t> _table;
  };

  struct IterationReport {
    std::vector<std::vector<std::size_t>> image_chain;  // f^0(X), ..., f^{N_image}(X)
    std::size_t                           n_image = 0;
    std::vector<std::size_t>              eventual_image;
    bool                                  restriction_bijective = false;
    OrbitProfile                          orbit;
  };

  inline IterationReport iterated_image(FiniteMap const& f,
                                        std::size_t      budget = 1'000'000) {
    IterationReport report;
    std::vector<std::size_t> current(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) current[i] = i;
    report.image_chain.push_back(current);
    while (true) {
      auto next = f.image(current);
      if (next == current) break;
      report.image_chain.push_back(next);
      current = std::move(next);
    }
    report.n_image        = report.image_chain.size() - 1;
    report.eventual_image = current;
    // f maps Y onto Y, so it is a bijection there
    report.restriction_bijective = f.image(current).size() == current.size();
    report.orbit                 = analyze(f, budget);
    return report;
  }

  struct FnyChecklist {
    std::size_t checked_up_to          = 0;  // largest m examined
    bool        image_invariant        = true;  // Y = f^m(Y)
    bool        restriction_bijective  = true;  // f|_Y is a bijection of Y
    bool        restriction_compatible = true;  // (f|_Y)^m = f^m|_Y

    bool ok() const noexcept {
      return image_invariant && restriction_bijective && restriction_compatible;
    }
  };

  // The eventual image Y is mapped onto itself, f restricts to a bijection
  // of Y, and iterating the restriction agrees with restricting the iterate,
  // for every m up to the order of f.
  inline FnyChecklist verify_fny(FiniteMap const& f, std::size_t budget = 1'000'000) {
    IterationReport const report = iterated_image(f, budget);
    auto const&           y      = report.eventual_image;
    std::vector<std::size_t> position(f.size(), f.size());
    for (std::size_t i = 0; i < y.size(); ++i) position[y[i]] = i;

    FnyChecklist check;
    std::vector<std::size_t> restricted(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      std::size_t target = position[f(y[i])];
      if (target == f.size()) {
        check.image_invariant = false;
        return check;
      }
      restricted[i] = target;
    }
    FiniteMap const g(restricted);
    check.restriction_bijective = g.is_bijective();

    FiniteMap                fm = f;
    FiniteMap                gm = g;
    std::vector<std::size_t> ym = f.image(y);
    std::size_t const        order = report.orbit.order();
    for (std::size_t m = 1; m <= order; ++m) {
      check.image_invariant = check.image_invariant && ym == y;
      for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[gm(i)] != fm(y[i])) check.restriction_compatible = false;
      }
      check.checked_up_to = m;
      if (!check.ok()) break;
      fm = f * fm;
      gm = g * gm;
      ym = f.image(ym);
    }
    return check;
  }

  // -- Polynomial maps over F_p ----------------------------------------------

  // Integer polynomial in x0, ..., x_{k-1}; terms keyed by exponent vectors.
  class MultiPolynomial {
   public:
    using Exponents = std::vector<unsigned>;

    explicit MultiPolynomial(std::size_t nvars = 0) : _nvars(nvars) {}

    static MultiPolynomial constant(std::size_t nvars, Integer const& c) {
      MultiPolynomial p(nvars);
      if (c != 0) p._terms[Exponents(nvars, 0)] = c;
      return p;
    }

    static MultiPolynomial variable(std::size_t nvars, std::size_t i) {
      MultiPolynomial p(nvars);
      Exponents       e(nvars, 0);
      e[i]        = 1;
      p._terms[e] = 1;
      return p;
    }

    // Grammar: integer coefficients, variables x0..x{nvars-1}, + - * ^ and
    // parentheses.
    static MultiPolynomial parse(std::string_view text, std::size_t nvars);

    std::map<Exponents, Integer> const& terms() const noexcept {
      return _terms;
    }

    MultiPolynomial operator+(MultiPolynomial const& o) const {
      MultiPolynomial r = *this;
      for (auto const& [e, c] : o._terms) r.add_term(e, c);
      return r;
    }

    MultiPolynomial operator-() const {
      MultiPolynomial r = *this;
      for (auto& [e, c] : r._terms) c = -c;
      return r;
    }

    MultiPolynomial operator-(MultiPolynomial const& o) const {
      return *this + (-o);
    }

    MultiPolynomial operator*(MultiPolynomial const& o) const {
      MultiPolynomial r(_nvars);
      for (auto const& [e1, c1] : _terms) {
        for (auto const& [e2, c2] : o._terms) {
          Exponents e(_nvars);
          for (std::size_t i = 0; i < _nvars; ++i) e[i] = e1[i] + e2[i];
          r.add_term(e, c1 * c2);
        }
      }
      return r;
    }

    // Total degree of every term when homogeneous; -1 for the zero
    // polynomial; -2 when not homogeneous.
    long homogeneous_degree() const {
      long deg = -1;
      for (auto const& [e, c] : _terms) {
        long d = 0;
        for (auto x : e) d += x;
        if (deg == -1) {
          deg = d;
        } else if (deg != d) {
          return -2;
        }
      }
      return deg;
    }

    std::int64_t evaluate_mod(std::vector<std::int64_t> const& x, std::int64_t p) const {
      ModP sum(0, p);
      for (auto const& [e, c] : _terms) {
        Integer cm = c % p;
        ModP    term(cm.convert_to<std::int64_t>(), p);
        for (std::size_t i = 0; i < _nvars; ++i) {
          for (unsigned k = 0; k < e[i]; ++k) term *= ModP(x[i], p);
        }
        sum += term;
      }
      return sum.value();
    }

   private:
    void add_term(Exponents const& e, Integer const& c) {
      auto [it, inserted] = _terms.try_emplace(e, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) _terms.erase(it);
      } else if (c == 0) {
        _terms.erase(it);
      }
    }

    std::size_t                  _nvars;
    std::map<Exponents, Integer> _terms;
  };

  namespace detail {

    class PolyParser {
     public:
      PolyParser(std::string_view text, std::size_t nvars) : _s(text), _nvars(nvars) {}

      MultiPolynomial run() {
        MultiPolynomial p = expr();
        skip();
        if (_i != _s.size()) fail("unexpected character");
        return p;
      }

     private:
      [[noreturn]] void fail(std::string const& why) const {
        throw Error(ErrorKind::invalid_input,
                    "polynomial \"" + std::string(_s) + "\": " + why + " at offset "
                        + std::to_string(_i));
      }

      void skip() {
        while (_i < _s.size() && std::isspace(static_cast<unsigned char>(_s[_i]))) ++_i;
      }

      bool eat(char c) {
        skip();
        if (_i < _s.size() && _s[_i] == c) {
          ++_i;
          return true;
        }
        return false;
      }

      std::string digits() {
        skip();
        std::size_t start = _i;
        while (_i < _s.size() && std::isdigit(static_cast<unsigned char>(_s[_i]))) ++_i;
        if (start == _i) fail("expected a number");
        return std::string(_s.substr(start, _i - start));
      }

      MultiPolynomial expr() {
        MultiPolynomial p = term();
        while (true) {
          if (eat('+')) {
            p = p + term();
          } else if (eat('-')) {
            p = p - term();
          } else {
            return p;
          }
        }
      }

      MultiPolynomial term() {
        MultiPolynomial p = unary();
        while (eat('*')) p = p * unary();
        return p;
      }

      MultiPolynomial unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
      }

      MultiPolynomial power() {
        MultiPolynomial base = atom();
        if (!eat('^')) return base;
        std::string e = digits();
        if (e.size() > 3 || std::stoul(e) > 256) fail("exponent too large");
        MultiPolynomial r = MultiPolynomial::constant(_nvars, 1);
        for (unsigned long k = std::stoul(e); k > 0; --k) r = r * base;
        return r;
      }

      MultiPolynomial atom() {
        skip();
        if (eat('(')) {
          MultiPolynomial p = expr();
          if (!eat(')')) fail("expected ')'");
          return p;
        }
        if (_i < _s.size() && _s[_i] == 'x') {
          ++_i;
          std::string idx = digits();
          if (idx.size() > 6 || std::stoul(idx) >= _nvars) {
            fail("variable x" + idx + " out of range (" + std::to_string(_nvars)
                 + " variables)");
          }
          return MultiPolynomial::variable(_nvars, std::stoul(idx));
        }
        if (_i < _s.size() && std::isdigit(static_cast<unsigned char>(_s[_i]))) {
          return MultiPolynomial::constant(_nvars, Integer(digits()));
        }
        fail("expected a term");
      }

      std::string_view _s;
      std::size_t      _nvars;
      std::size_t      _i = 0;
    };

  }  // namespace detail

  inline MultiPolynomial MultiPolynomial::parse(std::string_view text, std::size_t nvars) {
    return detail::PolyParser(text, nvars).run();
  }

  enum class Space { affine, projective };

  struct PolynomialMapModel {
    std::int64_t                           p = 2;
    Space                                  space = Space::affine;
    FiniteMap                              map;
    std::vector<std::vector<std::int64_t>> points;  // index -> coordinates
  };

  namespace detail {

    inline std::size_t checked_pow(std::int64_t base, std::size_t exp, std::size_t limit) {
      std::size_t r = 1;
      for (std::size_t k = 0; k < exp; ++k) {
        if (r > limit / static_cast<std::size_t>(base)) {
          throw Error(ErrorKind::invalid_input, "point set too large to enumerate");
        }
        r *= static_cast<std::size_t>(base);
      }
      return r;
    }

  }  // namespace detail

  // Enumerates A^n(F_p) (lexicographic) or P^n(F_p) (first nonzero
  // coordinate equal to one, grouped by its position) and tabulates the map.
  inline PolynomialMapModel from_polynomial_map(std::int64_t                    p,
                                                std::size_t                     n,
                                                std::vector<std::string> const& polys,
                                                Space                           space) {
    constexpr std::size_t max_points = 2'000'000;
    if (!is_prime(p)) {
      throw Error(ErrorKind::non_prime_field, std::to_string(p) + " is not prime");
    }
    if (p > 10'000) {
      throw Error(ErrorKind::invalid_input, "p must be at most 10^4");
    }
    if (n == 0) {
      throw Error(ErrorKind::invalid_input, "dimension must be positive");
    }
    std::size_t const nvars = space == Space::affine ? n : n + 1;
    if (polys.size() != nvars) {
      throw Error(ErrorKind::invalid_input,
                  "expected " + std::to_string(nvars) + " polynomials, got "
                      + std::to_string(polys.size()));
    }
    std::vector<MultiPolynomial> f;
    for (auto const& s : polys) f.push_back(MultiPolynomial::parse(s, nvars));

    if (space == Space::projective) {
      long degree = -1;
      for (std::size_t i = 0; i < f.size(); ++i) {
        long d = f[i].homogeneous_degree();
        if (d == -2 || (d >= 0 && degree >= 0 && d != degree)) {
          throw Error(ErrorKind::not_homogeneous,
                      "polynomial " + std::to_string(i) + " breaks homogeneity", i);
        }
        if (d >= 0) degree = d;
      }
    }

    PolynomialMapModel model{p, space, {}, {}};
    // block k holds the points whose first nonzero coordinate is k
    std::vector<std::size_t> block_start;
    if (space == Space::affine) {
      std::size_t count = detail::checked_pow(p, n, max_points);
      for (std::size_t idx = 0; idx < count; ++idx) {
        std::vector<std::int64_t> x(n);
        std::size_t               rest = idx;
        for (std::size_t i = n; i-- > 0;) {
          x[i] = static_cast<std::int64_t>(rest % p);
          rest /= p;
        }
        model.points.push_back(std::move(x));
      }
    } else {
      std::size_t offset = 0;
      for (std::size_t k = 0; k <= n; ++k) {
        block_start.push_back(offset);
        std::size_t count = detail::checked_pow(p, n - k, max_points);
        offset += count;
        if (offset > max_points) {
          throw Error(ErrorKind::invalid_input, "point set too large to enumerate");
        }
        for (std::size_t idx = 0; idx < count; ++idx) {
          std::vector<std::int64_t> x(n + 1, 0);
          x[k]             = 1;
          std::size_t rest = idx;
          for (std::size_t i = n + 1; i-- > k + 1;) {
            x[i] = static_cast<std::int64_t>(rest % p);
            rest /= p;
          }
          model.points.push_back(std::move(x));
        }
      }
    }

    auto index_of = [&](std::vector<std::int64_t> const& y) {
      if (space == Space::affine) {
        std::size_t idx = 0;
        for (auto v : y) idx = idx * p + static_cast<std::size_t>(v);
        return idx;
      }
      std::size_t k = 0;
      while (y[k] == 0) ++k;
      std::size_t idx = 0;
      for (std::size_t i = k + 1; i < y.size(); ++i) idx = idx * p + static_cast<std::size_t>(y[i]);
      return block_start[k] + idx;
    };

    std::vector<std::size_t> table(model.points.size());
    for (std::size_t i = 0; i < model.points.size(); ++i) {
      std::vector<std::int64_t> y(nvars);
      for (std::size_t j = 0; j < nvars; ++j) y[j] = f[j].evaluate_mod(model.points[i], p);
      if (space == Space::projective) {
        std::size_t k = 0;
        while (k < y.size() && y[k] == 0) ++k;
        if (k == y.size()) {
          std::string where;
          for (std::size_t j = 0; j < nvars; ++j) {
            where += (j ? ":" : "(") + std::to_string(model.points[i][j]);
          }
          throw Error(ErrorKind::ill_defined_at_point,
                      "map vanishes identically at " + where + ")", i);
        }
        ModP inv = ModP(y[k], p).inverse();
        for (auto& v : y) v = (ModP(v, p) * inv).value();
      }
      table[i] = index_of(y);
    }
    model.map = FiniteMap(std::move(table));
    return model;
  }

  // -- Product construction ----------------------------------------------------

  struct ProductConstruction {
    std::size_t              y_tilde_size = 0;
    std::size_t              b_size       = 0;
    FiniteMap                map;        // on Ỹ × B, index ỹ * |B| + z
    std::vector<std::size_t> psi;        // psi[y] = index of (h(y), j(y))
    std::vector<std::size_t> psi_image;  // sorted
    bool                     image_inside_psi = false;    // f(X) ⊆ ψ(Y)
    bool                     psi_inside_its_image = false;  // ψ(Y) ⊆ f(ψ(Y))
    IterationReport          report;

    bool ok() const noexcept {
      return image_inside_psi && psi_inside_its_image
             && report.eventual_image == psi_image && report.n_image <= 1;
    }
  };

  // From a surjection nu: Ỹ -> Y, a map h: Y -> Ỹ with nu o h onto Y and an
  // injection j: Y -> B, the
  // map f(ỹ, z) = (h(nu(ỹ)), j(nu(ỹ))) on Ỹ × B has iterated image
  // ψ(Y) = {(h(y), j(y))}, reached after one step.
  inline ProductConstruction product_construction(std::vector<std::size_t> const& nu,
                                                  std::vector<std::size_t> const& h,
                                                  std::vector<std::size_t> const& j,
                                                  std::size_t                     b_size,
                                                  std::size_t budget = 1'000'000) {
    std::size_t const yt = nu.size(), y = h.size();
    if (yt == 0 || y == 0) {
      throw Error(ErrorKind::invalid_input, "Ỹ and Y must be nonempty");
    }
    if (j.size() != y) {
      throw Error(ErrorKind::invalid_input, "j must have one entry per point of Y");
    }
    auto check_range = [](std::vector<std::size_t> const& t, std::size_t bound,
                          char const* name) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= bound) {
          throw Error(ErrorKind::invalid_input,
                      std::string(name) + " entry " + std::to_string(i) + " out of range", i);
        }
      }
    };
    check_range(nu, y, "nu");
    check_range(h, yt, "h");
    check_range(j, b_size, "j");
    auto check_onto = [](std::vector<std::size_t> const& t, std::size_t bound,
                         char const* name) {
      std::vector<bool> hit(bound, false);
      for (auto v : t) hit[v] = true;
      for (std::size_t v = 0; v < bound; ++v) {
        if (!hit[v]) {
          throw Error(ErrorKind::not_surjective,
                      std::string(name) + " misses " + std::to_string(v), v);
        }
      }
    };
    check_onto(nu, y, "nu");
    std::vector<std::size_t> nu_h(y);
    for (std::size_t i = 0; i < y; ++i) nu_h[i] = nu[h[i]];
    check_onto(nu_h, y, "nu o h");
    std::vector<std::size_t> seen(b_size, y);
    for (std::size_t i = 0; i < y; ++i) {
      if (seen[j[i]] != y) {
        throw Error(ErrorKind::not_injective,
                    "j sends " + std::to_string(seen[j[i]]) + " and " + std::to_string(i)
                        + " to " + std::to_string(j[i]),
                    i);
      }
      seen[j[i]] = i;
    }

    ProductConstruction out;
    out.y_tilde_size = yt;
    out.b_size       = b_size;
    std::vector<std::size_t> table(yt * b_size);
    for (std::size_t a = 0; a < yt; ++a) {
      for (std::size_t z = 0; z < b_size; ++z) {
        std::size_t w       = nu[a];
        table[a * b_size + z] = h[w] * b_size + j[w];
      }
    }
    out.map = FiniteMap(std::move(table));
    for (std::size_t i = 0; i < y; ++i) out.psi.push_back(h[i] * b_size + j[i]);
    out.psi_image = out.psi;
    std::sort(out.psi_image.begin(), out.psi_image.end());
    out.psi_image.erase(std::unique(out.psi_image.begin(), out.psi_image.end()),
                        out.psi_image.end());

    auto inside = [](std::vector<std::size_t> const& a, std::vector<std::size_t> const& b) {
      return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    std::vector<std::size_t> all(yt * b_size);
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    out.image_inside_psi     = inside(out.map.image(all), out.psi_image);
    out.psi_inside_its_image = inside(out.psi_image, out.map.image(out.psi_image));
    out.report               = iterated_image(out.map, budget);
    return out;
  }

  // Functional graph in Graphviz DOT: one node per point, one edge x -> f(x).
  inline std::string to_dot(FiniteMap const& f, std::string const& name = "f") {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (std::size_t i = 0; i < f.size(); ++i) os << "  " << i << " [label=\"" << i << "\"];\n";
    for (std::size_t i = 0; i < f.size(); ++i) os << "  " << i << " -> " << f(i) << ";\n";
    os << "}\n";
    return os.str();
  }

}  // namespace algdyn
