#pragma once

// Finitely generated rational cones in Q^d.  A cone is stored by its
// generators; the half-space form is recomputed on demand with the double
// description method and never persisted.  The zero cone is the cone with
// no generators.
//
// NE(f^n) of a dynamical system is modelled here as C ∩ ker(M^n) for a
// rational cone C and a rational matrix M: a model of the curve-class
// picture, not the scheme-theoretic object.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "matrix.hpp"

namespace algdyn {

  using QVector = Vector<Rational>;

  struct Subspace {
    std::size_t          ambient = 0;
    std::vector<QVector> basis;  // linearly independent

    std::size_t dim() const noexcept {
      return basis.size();
    }
  };

  class PolyCone {
   public:
    PolyCone() = default;

    PolyCone(std::size_t d, std::vector<QVector> generators)
        : _d(d), _gens(std::move(generators)) {
      if (d == 0) {
        throw Error(ErrorKind::invalid_input, "cone dimension must be positive");
      }
      for (std::size_t i = 0; i < _gens.size(); ++i) {
        if (_gens[i].size() != d) {
          throw Error(ErrorKind::dimension_mismatch,
                      "generator " + std::to_string(i) + " has wrong dimension", i);
        }
        bool nonzero = false;
        for (auto const& x : _gens[i]) nonzero = nonzero || x != 0;
        if (!nonzero) {
          throw Error(ErrorKind::invalid_input,
                      "generator " + std::to_string(i) + " is zero", i);
        }
      }
    }

    static PolyCone zero(std::size_t d) {
      return PolyCone(d, {});
    }

    // The nonnegative orthant spanned by e_1, ..., e_d.
    static PolyCone orthant(std::size_t d) {
      std::vector<QVector> gens;
      for (std::size_t i = 0; i < d; ++i) {
        QVector e(d, Rational(0));
        e[i] = 1;
        gens.push_back(std::move(e));
      }
      return PolyCone(d, std::move(gens));
    }

    std::size_t dim() const noexcept {
      return _d;
    }

    std::vector<QVector> const& generators() const noexcept {
      return _gens;
    }

    bool is_zero() const noexcept {
      return _gens.empty();
    }

   private:
    std::size_t          _d = 1;
    std::vector<QVector> _gens;
  };

  namespace detail {

    inline Rational dot(QVector const& a, QVector const& b) {
      Rational s = 0;
      for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
      return s;
    }

    inline bool is_zero_vector(QVector const& v) {
      for (auto const& x : v) {
        if (x != 0) return false;
      }
      return true;
    }

    // Positive rescaling to a primitive integer vector.
    inline QVector primitive(QVector v) {
      Integer l = 1;
      for (auto const& x : v) {
        Integer den = boost::multiprecision::denominator(x);
        l           = l / boost::multiprecision::gcd(l, den) * den;
      }
      Integer g = 0;
      for (auto& x : v) {
        x *= Rational(l);
        g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(x));
      }
      if (g > 1) {
        for (auto& x : v) x /= Rational(g);
      }
      return v;
    }

    inline QVector negate(QVector v) {
      for (auto& x : v) x = -x;
      return v;
    }

    inline QVector axpy(Rational const& s, QVector const& x, QVector y) {
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
      return y;
    }

  }  // namespace detail

  // Generators of {x in Q^d : a.x >= 0 for every a in constraints}, by the
  // double description method: lineality directions are split off first,
  // then rays are combined pairwise and kept when the combinatorial rank
  // test certifies adjacency.  Lineality directions come back as +/- pairs.
  inline std::vector<QVector> cone_from_inequalities(std::size_t                 d,
                                                     std::vector<QVector> const& constraints) {
    using detail::dot;
    std::vector<QVector> lineality;
    for (std::size_t i = 0; i < d; ++i) {
      QVector e(d, Rational(0));
      e[i] = 1;
      lineality.push_back(std::move(e));
    }
    std::vector<QVector> rays;
    std::vector<QVector> processed;

    auto zero_rank = [&](QVector const& x, QVector const* y) {
      std::vector<QVector> tight;
      for (auto const& a : processed) {
        if (dot(a, x) == 0 && (y == nullptr || dot(a, *y) == 0)) tight.push_back(a);
      }
      return rank_of_vectors(tight);
    };

    for (auto const& a : constraints) {
      if (a.size() != d) {
        throw Error(ErrorKind::dimension_mismatch, "constraint has wrong dimension");
      }
      if (detail::is_zero_vector(a)) continue;

      std::size_t pick = lineality.size();
      for (std::size_t i = 0; i < lineality.size(); ++i) {
        if (dot(a, lineality[i]) != 0) {
          pick = i;
          break;
        }
      }
      if (pick < lineality.size()) {
        QVector l0 = lineality[pick];
        if (dot(a, l0) < 0) l0 = detail::negate(l0);
        Rational const al0 = dot(a, l0);
        lineality.erase(lineality.begin() + pick);
        for (auto& l : lineality) l = detail::axpy(-dot(a, l) / al0, l0, l);
        for (auto& r : rays) r = detail::axpy(-dot(a, r) / al0, l0, r);
        rays.push_back(l0);
        processed.push_back(a);
        continue;
      }

      std::size_t const    target = rank_of_vectors(processed);  // rank before a
      std::vector<QVector> pos, neg, next;
      for (auto const& r : rays) {
        Rational s = dot(a, r);
        if (s > 0) {
          pos.push_back(r);
          next.push_back(r);
        } else if (s < 0) {
          neg.push_back(r);
        } else {
          next.push_back(r);
        }
      }
      for (auto const& p : pos) {
        for (auto const& n : neg) {
          // adjacent iff the common zero set has rank (rank of processed) - 2
          if (target < 2 || zero_rank(p, &n) != target - 2) continue;
          Rational const ap = dot(a, p), an = dot(a, n);
          QVector        c(d);
          for (std::size_t i = 0; i < d; ++i) c[i] = ap * n[i] - an * p[i];
          if (!detail::is_zero_vector(c)) next.push_back(std::move(c));
        }
      }
      rays = std::move(next);
      processed.push_back(a);
    }

    // One representative per extreme ray (identified by its zero set).
    std::vector<QVector>               out;
    std::set<std::vector<std::size_t>> seen;
    for (auto const& r : rays) {
      std::vector<std::size_t> zs;
      for (std::size_t i = 0; i < processed.size(); ++i) {
        if (dot(processed[i], r) == 0) zs.push_back(i);
      }
      if (seen.insert(zs).second) out.push_back(detail::primitive(r));
    }
    for (auto const& l : lineality) {
      out.push_back(detail::primitive(l));
      out.push_back(detail::primitive(detail::negate(l)));
    }
    return out;
  }

  // Half-space description {x : n.x >= 0 for all normals n} of a cone.
  struct FacetForm {
    std::vector<QVector> normals;

    bool contains(QVector const& x) const {
      for (auto const& n : normals) {
        if (detail::dot(n, x) < 0) return false;
      }
      return true;
    }
  };

  // Generators of the dual cone serve as the inequalities of C (C = C**).
  inline FacetForm facets(PolyCone const& c) {
    return FacetForm{cone_from_inequalities(c.dim(), c.generators())};
  }

  inline bool contains(PolyCone const& c, QVector const& x) {
    return facets(c).contains(x);
  }

  // Every generator of `inner` lies in `outer`.
  inline bool contains(PolyCone const& outer, PolyCone const& inner) {
    if (outer.dim() != inner.dim()) {
      throw Error(ErrorKind::dimension_mismatch, "cones live in different spaces");
    }
    FacetForm const f = facets(outer);
    for (auto const& g : inner.generators()) {
      if (!f.contains(g)) return false;
    }
    return true;
  }

  inline bool cones_equal(PolyCone const& a, PolyCone const& b) {
    return contains(a, b) && contains(b, a);
  }

  inline Subspace span(PolyCone const& c) {
    if (c.is_zero()) return Subspace{c.dim(), {}};
    return Subspace{c.dim(), column_space_basis(Matrix<Rational>::from_columns(c.generators()))};
  }

  inline Subspace orthogonal_complement(Subspace const& w) {
    if (w.basis.empty()) {
      return Subspace{w.ambient, PolyCone::orthant(w.ambient).generators()};
    }
    return Subspace{w.ambient, null_space_basis(Matrix<Rational>(w.basis))};
  }

  inline PolyCone intersect_subspace(PolyCone const& c, Subspace const& w) {
    for (auto const& b : w.basis) {
      if (b.size() != c.dim() || w.ambient != c.dim()) {
        throw Error(ErrorKind::dimension_mismatch, "subspace lives in another space");
      }
    }
    std::vector<QVector> constraints = facets(c).normals;
    for (auto const& v : orthogonal_complement(w).basis) {
      constraints.push_back(v);
      constraints.push_back(detail::negate(v));
    }
    return PolyCone(c.dim(), cone_from_inequalities(c.dim(), constraints));
  }

  struct ExtremalityResult {
    bool extremal = false;
    // a, b in C with a + b in T and a outside T (when not extremal)
    std::optional<std::pair<QVector, QVector>> witness;
    // T = C ∩ span(T); necessary for extremality but not sufficient
    bool equals_cone_cap_span = false;
  };

  // Smallest face of `c` containing every generator of `t`.
  inline PolyCone minimal_face(PolyCone const& c, PolyCone const& t) {
    std::vector<QVector> tight;
    for (auto const& n : facets(c).normals) {
      bool vanishes = true;
      for (auto const& g : t.generators()) vanishes = vanishes && detail::dot(n, g) == 0;
      if (vanishes) tight.push_back(n);
    }
    std::vector<QVector> gens;
    for (auto const& g : c.generators()) {
      bool in_face = true;
      for (auto const& n : tight) in_face = in_face && detail::dot(n, g) == 0;
      if (in_face) gens.push_back(g);
    }
    return PolyCone(c.dim(), std::move(gens));
  }

  // T is extremal in C (a + b in T with a, b in C forces a, b in T) exactly
  // when T is a face of C, i.e. equals the smallest face containing it.  If
  // not, with t the sum of T's generators and g a generator of that face
  // outside T, t lies in the relative interior of the face, so a = eps g and
  // b = t - eps g both lie in C for the largest admissible eps.
  inline ExtremalityResult is_extremal(PolyCone const& t, PolyCone const& c) {
    if (t.dim() != c.dim()) {
      throw Error(ErrorKind::dimension_mismatch, "cones live in different spaces");
    }
    FacetForm const fc = facets(c);
    for (std::size_t i = 0; i < t.generators().size(); ++i) {
      if (!fc.contains(t.generators()[i])) {
        throw Error(ErrorKind::not_a_subcone,
                    "generator " + std::to_string(i) + " of the subcone is outside the cone",
                    i);
      }
    }
    ExtremalityResult result;
    result.equals_cone_cap_span = cones_equal(t, intersect_subspace(c, span(t)));

    FacetForm const ft   = facets(t);
    PolyCone const  face = minimal_face(c, t);
    QVector const*  outside = nullptr;
    for (auto const& g : face.generators()) {
      if (!ft.contains(g)) {
        outside = &g;
        break;
      }
    }
    if (outside == nullptr) {
      result.extremal = true;
      return result;
    }
    QVector sum(c.dim(), Rational(0));
    for (auto const& g : t.generators()) sum = detail::axpy(Rational(1), g, sum);
    std::optional<Rational> eps;
    for (auto const& n : fc.normals) {
      Rational ng = detail::dot(n, *outside);
      if (ng > 0) {
        Rational bound = detail::dot(n, sum) / ng;
        if (!eps || bound < *eps) eps = bound;
      }
    }
    Rational const s = eps.value_or(Rational(1));
    if (s <= 0) {
      throw Error(ErrorKind::invariant_violation, "witness scale is not positive");
    }
    QVector a(c.dim(), Rational(0));
    a        = detail::axpy(s, *outside, a);
    QVector b = detail::axpy(-s, *outside, sum);
    result.witness = std::make_pair(std::move(a), std::move(b));
    return result;
  }

  // All faces of c, from the improper face down to the minimal one, found by
  // intersecting the zero sets of the facet inequalities.
  inline std::vector<PolyCone> enumerate_faces(PolyCone const& c) {
    std::vector<QVector> const& gens = c.generators();
    FacetForm const             f    = facets(c);
    using Mask                       = std::vector<bool>;
    std::vector<Mask> tight;
    for (auto const& n : f.normals) {
      Mask m(gens.size());
      for (std::size_t i = 0; i < gens.size(); ++i) m[i] = detail::dot(n, gens[i]) == 0;
      tight.push_back(std::move(m));
    }
    std::set<Mask>    seen{Mask(gens.size(), true)};
    std::vector<Mask> queue{Mask(gens.size(), true)};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (auto const& tm : tight) {
        Mask next(gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i) next[i] = queue[head][i] && tm[i];
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
    std::vector<PolyCone> faces;
    for (auto const& m : queue) {
      std::vector<QVector> fg;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (m[i]) fg.push_back(gens[i]);
      }
      faces.emplace_back(c.dim(), std::move(fg));
    }
    return faces;
  }

  struct ChainStabilization {
    std::size_t              index = 0;  // first position of the stable tail (0-based)
    std::size_t              strict_increases = 0;
    std::vector<std::size_t> span_dims;
  };

  inline ChainStabilization chain_stabilization(std::vector<PolyCone> const& chain,
                                                PolyCone const&              c) {
    if (chain.empty()) {
      throw Error(ErrorKind::invalid_input, "chain must be nonempty");
    }
    ChainStabilization out;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      bool extremal = false;
      try {
        extremal = is_extremal(chain[i], c).extremal;
      } catch (Error const& e) {
        if (e.kind() != ErrorKind::not_a_subcone) throw;
      }
      if (!extremal) {
        throw Error(ErrorKind::not_extremal,
                    "chain element " + std::to_string(i) + " is not extremal", i);
      }
      if (i > 0 && !contains(chain[i], chain[i - 1])) {
        throw Error(ErrorKind::not_increasing,
                    "chain element " + std::to_string(i) + " does not contain its predecessor",
                    i);
      }
      out.span_dims.push_back(span(chain[i]).dim());
      if (i > 0 && out.span_dims[i] < out.span_dims[i - 1]) {
        throw Error(ErrorKind::invariant_violation, "span dimension decreased", i);
      }
      // faces are determined by their spans, so equal dimensions mean equal cones
      if (i > 0 && out.span_dims[i] != out.span_dims[i - 1]) {
        out.index = i;
        ++out.strict_increases;
      }
    }
    // each strict step raises the span dimension
    if (out.strict_increases > c.dim()) {
      throw Error(ErrorKind::invariant_violation,
                  "extremal chain has more than d strict steps");
    }
    return out;
  }

  struct RelativeConeChain {
    std::vector<PolyCone>    cones;         // C ∩ ker(M^n), n = 1..nmax
    std::vector<std::size_t> kernel_dims;   // dim ker(M^n), n = 1..nmax
    std::size_t              cone_stable_at = 1;    // 1-based exponent
    std::size_t              kernel_stable_at = 1;  // least n with ker M^n = ker M^{n+1}
  };

  inline RelativeConeChain relative_cone_chain(PolyCone const&         c,
                                               Matrix<Rational> const& m,
                                               std::size_t             nmax) {
    std::size_t const d = c.dim();
    if (!m.is_square() || m.rows() != d) {
      throw Error(ErrorKind::dimension_mismatch,
                  "matrix must be " + std::to_string(d) + "x" + std::to_string(d));
    }
    if (nmax == 0) {
      throw Error(ErrorKind::invalid_input, "nmax must be positive");
    }
    RelativeConeChain out;
    Matrix<Rational>  mn = m;
    std::size_t       last_rank = rank(mn);
    for (std::size_t n = 1;; ++n) {
      Matrix<Rational> next = mn * m;
      std::size_t      r    = rank(next);
      if (r == last_rank) {
        out.kernel_stable_at = n;
        break;
      }
      last_rank = r;
      mn        = std::move(next);
    }
    if (out.kernel_stable_at > d) {
      throw Error(ErrorKind::invariant_violation, "kernel chain longer than d");
    }

    mn = m;
    for (std::size_t n = 1; n <= nmax; ++n) {
      Subspace ker{d, null_space_basis(mn)};
      out.kernel_dims.push_back(ker.dim());
      out.cones.push_back(intersect_subspace(c, ker));
      if (n > 1 && !contains(out.cones[n - 1], out.cones[n - 2])) {
        throw Error(ErrorKind::not_increasing,
                    "relative cone chain decreased at n = " + std::to_string(n), n - 1);
      }
      mn = mn * m;
    }
    for (std::size_t i = 1; i < out.cones.size(); ++i) {
      if (!cones_equal(out.cones[i], out.cones[i - 1])) out.cone_stable_at = i + 1;
    }
    if (nmax > out.kernel_stable_at && out.cone_stable_at > out.kernel_stable_at) {
      throw Error(ErrorKind::invariant_violation,
                  "cone chain moved after the kernels stabilized");
    }
    return out;
  }

}  // namespace algdyn
