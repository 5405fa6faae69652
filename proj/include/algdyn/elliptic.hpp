#pragma once

// Short Weierstrass curves y^2 = x^3 + a x + b over Q or F_p (p > 3) with
// exact chord-tangent arithmetic, torsion detection, and the decision of
// whether finitely many disjoint point sets fit in translates of one finite
// subgroup.
//
// Torsion over Q is decided with the classical uniform bound: a rational
// point of finite order has order at most 12 (Mazur).  Over F_p every point
// has finite order and the Hasse bound caps the search.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace algdyn {

  template <typename T>
  struct ECPoint {
    bool infinity = true;
    T    x{};
    T    y{};

    static ECPoint at_infinity() {
      return ECPoint{};
    }

    static ECPoint affine(T x, T y) {
      return ECPoint{false, std::move(x), std::move(y)};
    }

    friend bool operator==(ECPoint const& p, ECPoint const& q) {
      if (p.infinity || q.infinity) return p.infinity == q.infinity;
      return p.x == q.x && p.y == q.y;
    }

    friend bool operator!=(ECPoint const& p, ECPoint const& q) {
      return !(p == q);
    }

    friend bool operator<(ECPoint const& p, ECPoint const& q) {
      if (p.infinity || q.infinity) return p.infinity && !q.infinity;
      if (p.x == q.x) return p.y < q.y;
      return p.x < q.x;
    }
  };

  template <typename T>
  std::string to_string(ECPoint<T> const& p) {
    if (p.infinity) return "O";
    return "(" + to_string(p.x) + "," + to_string(p.y) + ")";
  }

  template <typename T>
  class Curve {
   public:
    using Point = ECPoint<T>;

    Curve(T a, T b) : _a(std::move(a)), _b(std::move(b)) {
      T disc = from_int_like(4, _a) * _a * _a * _a + from_int_like(27, _b) * _b * _b;
      if (is_zero(disc)) {
        throw Error(ErrorKind::singular_curve, "4a^3 + 27b^2 vanishes");
      }
    }

    T const& a() const noexcept {
      return _a;
    }

    T const& b() const noexcept {
      return _b;
    }

    T rhs(T const& x) const {
      return x * x * x + _a * x + _b;
    }

    bool on_curve(Point const& p) const {
      return p.infinity || p.y * p.y == rhs(p.x);
    }

    void require_on_curve(Point const& p) const {
      if (!on_curve(p)) {
        throw Error(ErrorKind::point_not_on_curve, to_string(p) + " is not on the curve");
      }
    }

    Point negate(Point const& p) const {
      if (p.infinity) return p;
      return Point::affine(p.x, -p.y);
    }

    Point add(Point const& p, Point const& q) const {
      require_on_curve(p);
      require_on_curve(q);
      return add_unchecked(p, q);
    }

    Point subtract(Point const& p, Point const& q) const {
      return add(p, negate(q));
    }

    Point multiply(std::int64_t k, Point const& p) const {
      require_on_curve(p);
      Point base = k < 0 ? negate(p) : p;
      auto  n    = static_cast<std::uint64_t>(k < 0 ? -k : k);
      Point acc  = Point::at_infinity();
      while (n > 0) {
        if (n & 1) acc = add_unchecked(acc, base);
        n >>= 1;
        if (n > 0) base = add_unchecked(base, base);
      }
      return acc;
    }

    // Caller guarantees both points lie on the curve.
    Point add_unchecked(Point const& p, Point const& q) const {
      if (p.infinity) return q;
      if (q.infinity) return p;
      T lambda;
      if (p.x == q.x) {
        if (p.y == -q.y) return Point::at_infinity();
        lambda = (from_int_like(3, p.x) * p.x * p.x + _a) / (from_int_like(2, p.y) * p.y);
      } else {
        lambda = (q.y - p.y) / (q.x - p.x);
      }
      T x3 = lambda * lambda - p.x - q.x;
      T y3 = lambda * (p.x - x3) - p.y;
      return Point::affine(std::move(x3), std::move(y3));
    }

   private:
    T _a;
    T _b;
  };

  using CurveQ  = Curve<Rational>;
  using CurveFp = Curve<ModP>;
  using PointQ  = ECPoint<Rational>;
  using PointFp = ECPoint<ModP>;

  inline CurveFp make_curve_fp(std::int64_t p, std::int64_t a, std::int64_t b) {
    if (!is_prime(p)) {
      throw Error(ErrorKind::non_prime_field, std::to_string(p) + " is not prime");
    }
    if (p <= 3) {
      throw Error(ErrorKind::invalid_input, "short Weierstrass form needs p > 3");
    }
    return CurveFp(ModP(a, p), ModP(b, p));
  }

  inline PointFp fp_point(CurveFp const& e, std::int64_t x, std::int64_t y) {
    std::int64_t p = e.a().modulus();
    return PointFp::affine(ModP(x, p), ModP(y, p));
  }

  inline PointQ q_point(Rational x, Rational y) {
    return PointQ::affine(std::move(x), std::move(y));
  }

  // Order when it is at most 12, nullopt otherwise (then the point has
  // infinite order).
  inline std::optional<std::size_t> order_of_q(CurveQ const& e, PointQ const& p) {
    e.require_on_curve(p);
    PointQ acc = p;
    for (std::size_t k = 1; k <= 12; ++k) {
      if (acc.infinity) return k;
      acc = e.add_unchecked(acc, p);
    }
    return std::nullopt;
  }

  inline std::size_t hasse_bound(std::int64_t p) {
    auto s = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(p))));
    while (s * s < static_cast<std::size_t>(p)) ++s;
    return static_cast<std::size_t>(p) + 1 + 2 * s;
  }

  inline std::size_t order_of_fp(CurveFp const& e, PointFp const& p) {
    e.require_on_curve(p);
    std::size_t const bound = hasse_bound(e.a().modulus());
    PointFp           acc   = p;
    for (std::size_t k = 1; k <= bound; ++k) {
      if (acc.infinity) return k;
      acc = e.add_unchecked(acc, p);
    }
    throw Error(ErrorKind::invariant_violation, "point order exceeds the Hasse bound");
  }

  inline std::optional<std::size_t> torsion_order(CurveQ const& e, PointQ const& p) {
    return order_of_q(e, p);
  }

  inline std::optional<std::size_t> torsion_order(CurveFp const& e, PointFp const& p) {
    return order_of_fp(e, p);
  }

  // All of E(F_p): the point at infinity, then affine points by x, then y.
  inline std::vector<PointFp> enumerate_points(CurveFp const& e) {
    std::int64_t const p = e.a().modulus();
    if (p > 10'000) {
      throw Error(ErrorKind::invalid_input, "point enumeration needs p <= 10^4");
    }
    std::vector<std::vector<std::int64_t>> roots(p);
    for (std::int64_t y = 0; y < p; ++y) roots[(y * y) % p].push_back(y);
    std::vector<PointFp> pts{PointFp::at_infinity()};
    for (std::int64_t x = 0; x < p; ++x) {
      ModP r = e.rhs(ModP(x, p));
      for (auto y : roots[r.value()]) pts.push_back(fp_point(e, x, y));
    }
    return pts;
  }

  // Subgroup generated by finite-order points: closure of {O} under adding
  // generators.
  template <typename T>
  std::vector<ECPoint<T>> generated_subgroup(Curve<T> const&                e,
                                             std::vector<ECPoint<T>> const& gens) {
    std::set<ECPoint<T>>    seen{ECPoint<T>::at_infinity()};
    std::vector<ECPoint<T>> order{ECPoint<T>::at_infinity()};
    for (std::size_t head = 0; head < order.size(); ++head) {
      for (auto const& g : gens) {
        ECPoint<T> next = e.add_unchecked(order[head], g);
        if (seen.insert(next).second) order.push_back(std::move(next));
      }
    }
    std::sort(order.begin(), order.end());
    return order;
  }

  template <typename T>
  struct TranslateDecision {
    bool yes = false;
    // yes: F = <subgroup_generators> ⊆ E[n], fiber i ⊆ representatives[i] + F
    std::size_t             n = 1;
    std::vector<ECPoint<T>> subgroup_generators;
    std::vector<ECPoint<T>> representatives;
    std::vector<ECPoint<T>> subgroup;
    // no: a difference inside fiber `fiber_index` of infinite order
    std::size_t fiber_index = 0;
    ECPoint<T>  witness_difference;
  };

  // Any admissible F contains every difference Q - x_i inside a fiber, so
  // the fibers fit in translates of a finite subgroup iff all those
  // differences are torsion; the smallest such F is the subgroup they
  // generate.  `representative_choice[i]` selects x_i within fiber i
  // (default: its first point).
  template <typename T>
  TranslateDecision<T> decide_translate_subgroup(
      Curve<T> const&                             e,
      std::vector<std::vector<ECPoint<T>>> const& fibers,
      std::vector<std::size_t> const&             representative_choice = {}) {
    std::set<ECPoint<T>> used;
    for (std::size_t i = 0; i < fibers.size(); ++i) {
      if (fibers[i].empty()) {
        throw Error(ErrorKind::empty_fiber, "fiber " + std::to_string(i) + " is empty", i);
      }
      std::set<ECPoint<T>> own;
      for (auto const& pt : fibers[i]) {
        e.require_on_curve(pt);
        own.insert(pt);
      }
      for (auto const& pt : own) {
        if (!used.insert(pt).second) {
          throw Error(ErrorKind::fibers_not_disjoint,
                      "fiber " + std::to_string(i) + " shares " + to_string(pt)
                          + " with an earlier fiber",
                      i);
        }
      }
    }

    TranslateDecision<T> out;
    std::size_t          n = 1;
    for (std::size_t i = 0; i < fibers.size(); ++i) {
      std::size_t choice = i < representative_choice.size() ? representative_choice[i] : 0;
      if (choice >= fibers[i].size()) {
        throw Error(ErrorKind::invalid_input, "representative index out of range", i);
      }
      ECPoint<T> const& rep = fibers[i][choice];
      out.representatives.push_back(rep);
      for (auto const& pt : fibers[i]) {
        ECPoint<T> diff = e.add_unchecked(pt, e.negate(rep));
        if (diff.infinity) continue;
        auto ord = torsion_order(e, diff);
        if (!ord) {
          TranslateDecision<T> no;
          no.fiber_index        = i;
          no.witness_difference = diff;
          return no;
        }
        n = std::lcm(n, *ord);
        if (std::find(out.subgroup_generators.begin(), out.subgroup_generators.end(), diff)
            == out.subgroup_generators.end()) {
          out.subgroup_generators.push_back(diff);
        }
      }
    }
    out.yes      = true;
    out.n        = n;
    out.subgroup = generated_subgroup(e, out.subgroup_generators);

    // certificate: F ⊆ E[n] and every fiber sits in its translate
    std::set<ECPoint<T>> members(out.subgroup.begin(), out.subgroup.end());
    for (auto const& pt : out.subgroup) {
      if (!e.multiply(static_cast<std::int64_t>(n), pt).infinity) {
        throw Error(ErrorKind::invariant_violation, "subgroup is not n-torsion");
      }
    }
    for (std::size_t i = 0; i < fibers.size(); ++i) {
      for (auto const& pt : fibers[i]) {
        if (!members.count(e.add_unchecked(pt, e.negate(out.representatives[i])))) {
          throw Error(ErrorKind::invariant_violation, "fiber escapes its translate", i);
        }
      }
    }
    return out;
  }

  // Fixed point of z -> k z + z0 on E(F_p), i.e. a solution of
  // (k - 1) y = -z0, by exhaustive search.
  inline std::optional<PointFp> fixed_point_of_translated_isogeny(CurveFp const& e,
                                                                  std::int64_t   k,
                                                                  PointFp const& z0) {
    e.require_on_curve(z0);
    for (auto const& y : enumerate_points(e)) {
      if (e.add_unchecked(e.multiply(k, y), z0) == y) return y;
    }
    return std::nullopt;
  }

  struct DegreeCheck {
    std::size_t n            = 1;
    std::size_t group_order  = 0;
    std::size_t kernel_size  = 0;  // |E(F_p)[n]|
    std::size_t image_size   = 0;  // |n E(F_p)|
    bool        kernel_divides_n_squared = false;
    bool        index_equals_kernel      = false;  // [E : nE] = |E[n]|

    bool ok() const noexcept {
      return kernel_divides_n_squared && index_equals_kernel;
    }
  };

  // Rational-point shadow of "multiplication by n has degree n^2".
  inline DegreeCheck multiplication_degree_check(CurveFp const& e, std::size_t n) {
    if (n == 0) {
      throw Error(ErrorKind::invalid_input, "n must be positive");
    }
    auto const        pts = enumerate_points(e);
    DegreeCheck       out;
    std::set<PointFp> image;
    out.n           = n;
    out.group_order = pts.size();
    for (auto const& pt : pts) {
      PointFp m = e.multiply(static_cast<std::int64_t>(n), pt);
      if (m.infinity) ++out.kernel_size;
      image.insert(m);
    }
    out.image_size               = image.size();
    out.kernel_divides_n_squared = (n * n) % out.kernel_size == 0;
    out.index_equals_kernel      = out.group_order % out.image_size == 0
                              && out.group_order / out.image_size == out.kernel_size;
    return out;
  }

}  // namespace algdyn
