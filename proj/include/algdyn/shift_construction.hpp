#pragma once

// Realising a prescribed (group, generator, tail length) triple as a finite
// dynamical system.  With H = Z/ord(h) acting on itself by h = +step and a
// base set B = {0, ..., b-1}, b >= 2, the shift
//
//   f(x_1, ..., x_p, y) = (0, x_1, ..., x_{p-1}, h(y))
//
// on B^p × H has index exactly p, period ord(h), idempotent
// e(x, y) = (0, ..., 0, y) and kernel group isomorphic to <h>.

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "cyclic_semigroup.hpp"
#include "error.hpp"
#include "finite_dynamics.hpp"

namespace algdyn {

  struct MonotheticModel {
    std::size_t p              = 1;
    std::size_t h_order        = 1;
    std::size_t base_size      = 2;
    std::size_t generator_step = 1;  // h = translation by this step; coprime to h_order
  };

  class ShiftSystem {
   public:
    explicit ShiftSystem(MonotheticModel const& model) : _model(model) {
      if (model.p == 0) {
        throw Error(ErrorKind::invalid_input, "p must be positive");
      }
      if (model.h_order == 0) {
        throw Error(ErrorKind::invalid_input, "h_order must be positive");
      }
      if (model.base_size < 2) {
        throw Error(ErrorKind::base_too_small,
                    "base set needs a marked point and one more point");
      }
      if (std::gcd(model.generator_step, model.h_order) != 1) {
        throw Error(ErrorKind::invalid_input, "h does not generate H");
      }
      constexpr std::size_t max_states = 4'000'000;
      _states                          = model.h_order;
      for (std::size_t i = 0; i < model.p; ++i) {
        if (_states > max_states / model.base_size) {
          throw Error(ErrorKind::invalid_input, "shift system too large");
        }
        _states *= model.base_size;
      }
    }

    MonotheticModel const& model() const noexcept {
      return _model;
    }

    std::size_t state_count() const noexcept {
      return _states;
    }

    // Lexicographic on (x_1, ..., x_p, y).
    std::size_t encode(std::vector<std::size_t> const& x, std::size_t y) const {
      std::size_t idx = 0;
      for (auto v : x) idx = idx * _model.base_size + v;
      return idx * _model.h_order + y;
    }

    std::pair<std::vector<std::size_t>, std::size_t> decode(std::size_t idx) const {
      std::size_t              y = idx % _model.h_order;
      std::vector<std::size_t> x(_model.p);
      idx /= _model.h_order;
      for (std::size_t i = _model.p; i-- > 0;) {
        x[i] = idx % _model.base_size;
        idx /= _model.base_size;
      }
      return {std::move(x), y};
    }

    // (x, y) -> (0, ..., 0, y + shift)
    FiniteMap collapse_and_translate(std::size_t shift) const {
      std::vector<std::size_t> t(_states);
      std::vector<std::size_t> zeros(_model.p, 0);
      for (std::size_t i = 0; i < _states; ++i) {
        t[i] = encode(zeros, (decode(i).second + shift) % _model.h_order);
      }
      return FiniteMap(std::move(t));
    }

    FiniteMap build() const {
      std::vector<std::size_t> t(_states);
      for (std::size_t i = 0; i < _states; ++i) {
        auto [x, y] = decode(i);
        std::vector<std::size_t> nx(_model.p, 0);
        for (std::size_t k = 1; k < _model.p; ++k) nx[k] = x[k - 1];
        t[i] = encode(nx, (y + _model.generator_step) % _model.h_order);
      }
      return FiniteMap(std::move(t));
    }

   private:
    MonotheticModel _model;
    std::size_t     _states = 0;
  };

  inline FiniteMap build(MonotheticModel const& model) {
    return ShiftSystem(model).build();
  }

  struct ShiftReport {
    MonotheticModel model;
    std::size_t     state_count = 0;
    OrbitProfile    orbit;

    bool index_equals_p               = false;
    bool period_equals_h_order        = false;
    bool order_matches                = false;  // p - 1 + ord(h)
    bool idempotent_matches           = false;  // f^t = (x, y) -> (0, ..., 0, y)
    bool idempotent_exponent_invariant = false;  // f^{t + kq} gives the same table
    bool kernel_group_isomorphic      = false;  // K ≅ <h> via translations
    bool generator_matches            = false;  // e f = (x, y) -> (0, ..., 0, h(y))
    bool eventual_image_matches       = false;  // {0}^p × H

    bool ok() const noexcept {
      return index_equals_p && period_equals_h_order && order_matches && idempotent_matches
             && idempotent_exponent_invariant && kernel_group_isomorphic && generator_matches
             && eventual_image_matches;
    }
  };

  inline ShiftReport verify_theorem(MonotheticModel const& model,
                                    std::size_t            budget = 1'000'000) {
    ShiftSystem const sys(model);
    FiniteMap const   f = sys.build();

    ShiftReport report;
    report.model       = model;
    report.state_count = sys.state_count();
    report.orbit       = analyze(f, budget);
    auto const& o      = report.orbit;

    report.index_equals_p        = o.index == model.p;
    report.period_equals_h_order = o.period == model.h_order;
    report.order_matches         = o.order() == model.p - 1 + model.h_order;

    std::size_t const t  = o.idempotent_exponent();
    FiniteMap const   e  = semigroup_power(f, t);
    FiniteMap const   id_shape = sys.collapse_and_translate(0);
    report.idempotent_matches = e == id_shape;
    report.idempotent_exponent_invariant
        = semigroup_power(f, t + o.period) == e && semigroup_power(f, t + 2 * o.period) == e;

    // K = [f^r, ..., f^{r+q-1}]; f^k for k >= p is (x, y) -> (0, y + k step).
    auto const  group = kernel_group(f, o);
    std::size_t const q = group.size();
    auto phi = [&](std::size_t i) { return ((o.index + i) * model.generator_step) % model.h_order; };
    bool iso = q == model.h_order;
    std::vector<bool> hit(model.h_order, false);
    for (std::size_t i = 0; iso && i < q; ++i) {
      iso = group[i] == sys.collapse_and_translate(phi(i)) && !hit[phi(i)];
      hit[phi(i)] = true;
    }
    for (std::size_t i = 0; iso && i < q; ++i) {
      for (std::size_t k = 0; iso && k < q; ++k) {
        iso = group[i] * group[k]
              == sys.collapse_and_translate((phi(i) + phi(k)) % model.h_order);
      }
    }
    report.kernel_group_isomorphic = iso;
    report.generator_matches
        = e * f == sys.collapse_and_translate(model.generator_step % model.h_order);

    std::vector<std::size_t> expected_image;
    for (std::size_t y = 0; y < model.h_order; ++y) {
      expected_image.push_back(sys.encode(std::vector<std::size_t>(model.p, 0), y));
    }
    report.eventual_image_matches = iterated_image(f, budget).eventual_image == expected_image;
    return report;
  }

}  // namespace algdyn
