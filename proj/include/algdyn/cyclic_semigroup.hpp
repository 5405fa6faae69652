#pragma once

// Structure of the cyclic (monogenic) subsemigroup <a> = {a, a^2, ...} of an
// element of an arbitrary semigroup.  The semigroup is presented only by a
// composition callback and an equality test; elements are never hashed.
//
// When <a> is finite there are unique r >= 1 (the index) and q >= 1 (the
// period) with a^{r+q} = a^r, the powers a, ..., a^{r+q-1} pairwise distinct,
// and K_a = {a^r, ..., a^{r+q-1}} a cyclic group whose neutral element is
// the unique idempotent power.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "error.hpp"

namespace algdyn {

  struct OrbitProfile {
    std::size_t index  = 1;
    std::size_t period = 1;

    // |<a>|
    std::size_t order() const noexcept {
      return index - 1 + period;
    }

    // The unique multiple of the period in [index, index + period - 1].
    std::size_t idempotent_exponent() const noexcept {
      return ((index + period - 1) / period) * period;
    }

    friend bool operator==(OrbitProfile const&, OrbitProfile const&) = default;
  };

  inline std::size_t idempotent_power(OrbitProfile const& p) {
    return p.idempotent_exponent();
  }

  // a^k for k >= 1 by binary powering (associativity of compose assumed).
  template <typename T, typename Compose = std::multiplies<>>
  T semigroup_power(T const& a, std::size_t k, Compose compose = {}) {
    if (k == 0) {
      throw Error(ErrorKind::invalid_input, "semigroup powers start at 1");
    }
    T base = a;
    --k;
    T result = a;
    while (k > 0) {
      if (k & 1) result = compose(result, base);
      k >>= 1;
      if (k > 0) base = compose(base, base);
    }
    return result;
  }

  // Brent cycle detection on the sequence x_1 = a, x_{k+1} = x_k * a.
  // Throws OrderExceedsBudget when |<a>| > budget (including the infinite
  // case, which no black-box procedure can distinguish).
  template <typename T,
            typename Compose = std::multiplies<>,
            typename Equal   = std::equal_to<>>
  OrbitProfile analyze(T const&    a,
                       std::size_t budget,
                       Compose     compose = {},
                       Equal       equal   = {}) {
    if (budget == 0) {
      throw Error(ErrorKind::invalid_input, "budget must be at least 1");
    }
    auto exceeded = [budget] {
      return Error(ErrorKind::order_exceeds_budget,
                   "order of the cyclic semigroup exceeds budget "
                       + std::to_string(budget));
    };
    // Brent's search touches at most ~4 max(r, q) + q terms before the
    // tortoise and hare meet, so this cap is only reached when the order
    // really exceeds the budget.
    std::size_t const cap   = 6 * budget + 8;
    std::size_t       steps = 0;

    std::size_t power = 1, lam = 1;
    T           tortoise = a;
    T           hare     = compose(a, a);
    while (!equal(tortoise, hare)) {
      if (power == lam) {
        tortoise = hare;
        power *= 2;
        lam = 0;
      }
      hare = compose(hare, a);
      ++lam;
      if (++steps > cap) throw exceeded();
    }

    std::size_t mu = 0;
    tortoise       = a;
    hare           = a;
    for (std::size_t i = 0; i < lam; ++i) hare = compose(hare, a);
    while (!equal(tortoise, hare)) {
      tortoise = compose(tortoise, a);
      hare     = compose(hare, a);
      ++mu;
    }
    OrbitProfile profile{mu + 1, lam};
    if (profile.order() > budget) throw exceeded();
    return profile;
  }

  // [a^r, ..., a^{r+q-1}], after checking that the list is closed under
  // compose, that a^t is neutral in it and that a^{t+1} generates it.
  template <typename T,
            typename Compose = std::multiplies<>,
            typename Equal   = std::equal_to<>>
  std::vector<T> kernel_group(T const&            a,
                              OrbitProfile const& profile,
                              Compose             compose = {},
                              Equal               equal   = {}) {
    std::size_t const r = profile.index, q = profile.period;
    std::size_t const t = profile.idempotent_exponent();

    std::vector<T> group;
    group.reserve(q);
    group.push_back(semigroup_power(a, r, compose));
    for (std::size_t i = 1; i < q; ++i) group.push_back(compose(group.back(), a));

    auto violation = [](std::string const& what) {
      return Error(ErrorKind::closure_violation, "kernel group: " + what);
    };
    // a^{r+i} sits at position i; a^k for k >= r sits at (k - r) mod q.
    auto slot = [&](std::size_t k) { return (k - r) % q; };

    if (!equal(compose(group.back(), a), group.front())) {
      throw violation("a^{r+q} differs from a^r");
    }
    T const& neutral = group[slot(t)];
    if (!equal(compose(neutral, neutral), neutral)) {
      throw violation("a^t is not idempotent");
    }
    for (std::size_t i = 0; i < q; ++i) {
      if (!equal(compose(neutral, group[i]), group[i])
          || !equal(compose(group[i], neutral), group[i])) {
        throw violation("a^t is not neutral");
      }
    }
    // Full multiplication table for small groups, first rows otherwise.
    std::size_t rows = q * q <= 4096 ? q : std::min<std::size_t>(q, 3);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        if (!equal(compose(group[i], group[j]), group[slot(2 * r + i + j)])) {
          throw violation("product leaves the group");
        }
      }
    }
    T const     gen = group[slot(t + 1)];
    T           acc = gen;
    for (std::size_t j = 1; j <= q; ++j) {
      if (!equal(acc, group[slot(j * (t + 1))])) {
        throw violation("a^{t+1} does not generate");
      }
      acc = compose(acc, gen);
    }
    return group;
  }

}  // namespace algdyn
