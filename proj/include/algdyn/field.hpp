#pragma once

// Exact scalar types shared by every module: arbitrary-precision rationals
// and elements of a prime field F_p.  Generic code obtains constants through
// zero_like / one_like / from_int_like so that a runtime modulus travels with
// the values.

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace algdyn {

  using Integer  = boost::multiprecision::cpp_int;
  using Rational = boost::multiprecision::cpp_rational;

  inline Rational zero_like(Rational const&) {
    return Rational(0);
  }

  inline Rational one_like(Rational const&) {
    return Rational(1);
  }

  inline Rational from_int_like(std::int64_t k, Rational const&) {
    return Rational(k);
  }

  inline bool is_zero(Rational const& x) {
    return x == 0;
  }

  // Accepts "p/q", "-p/q", "p".  Denominator must be nonzero.
  inline Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
      while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
      return s;
    };
    auto parse_int = [&](std::string_view s) -> Integer {
      s = trim(s);
      std::size_t i = 0;
      if (!s.empty() && (s[0] == '-' || s[0] == '+')) ++i;
      if (i == s.size()) {
        throw Error(ErrorKind::invalid_input,
                    "malformed rational: \"" + std::string(text) + "\"");
      }
      for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] < '0' || s[k] > '9') {
          throw Error(ErrorKind::invalid_input,
                      "malformed rational: \"" + std::string(text) + "\"");
        }
      }
      return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      return Rational(parse_int(text));
    }
    Integer num = parse_int(text.substr(0, slash));
    Integer den = parse_int(text.substr(slash + 1));
    if (den <= 0) {
      throw Error(ErrorKind::invalid_input,
                  "denominator must be positive in \"" + std::string(text) + "\"");
    }
    return Rational(num, den);
  }

  // "p/q" in lowest terms, or "p" when the denominator is one.
  inline std::string to_string(Rational const& x) {
    if (boost::multiprecision::denominator(x) == 1) {
      return boost::multiprecision::numerator(x).str();
    }
    return boost::multiprecision::numerator(x).str() + "/"
           + boost::multiprecision::denominator(x).str();
  }

  inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  }

  // Element of F_p with the modulus carried alongside the value.  The modulus
  // must be below 2^31 so that products fit in 64 bits.
  class ModP {
   public:
    ModP() = default;

    ModP(std::int64_t value, std::int64_t modulus) : _p(modulus) {
      if (modulus < 2 || modulus >= (std::int64_t(1) << 31)) {
        throw Error(ErrorKind::non_prime_field,
                    "modulus out of range: " + std::to_string(modulus));
      }
      _v = value % modulus;
      if (_v < 0) _v += modulus;
    }

    std::int64_t value() const noexcept {
      return _v;
    }

    std::int64_t modulus() const noexcept {
      return _p;
    }

    ModP operator+(ModP const& o) const {
      check(o);
      std::int64_t s = _v + o._v;
      return raw(s >= _p ? s - _p : s, _p);
    }

    ModP operator-(ModP const& o) const {
      check(o);
      std::int64_t s = _v - o._v;
      return raw(s < 0 ? s + _p : s, _p);
    }

    ModP operator-() const {
      return raw(_v == 0 ? 0 : _p - _v, _p);
    }

    ModP operator*(ModP const& o) const {
      check(o);
      return raw((_v * o._v) % _p, _p);
    }

    ModP operator/(ModP const& o) const {
      return *this * o.inverse();
    }

    ModP& operator+=(ModP const& o) {
      return *this = *this + o;
    }

    ModP& operator-=(ModP const& o) {
      return *this = *this - o;
    }

    ModP& operator*=(ModP const& o) {
      return *this = *this * o;
    }

    ModP& operator/=(ModP const& o) {
      return *this = *this / o;
    }

    ModP inverse() const {
      if (_v == 0) {
        throw Error(ErrorKind::invalid_input, "division by zero in F_p");
      }
      std::int64_t t = 0, new_t = 1, r = _p, new_r = _v;
      while (new_r != 0) {
        std::int64_t q = r / new_r;
        t              = std::exchange(new_t, t - q * new_t);
        r              = std::exchange(new_r, r - q * new_r);
      }
      return ModP(t, _p);
    }

    friend bool operator==(ModP const& a, ModP const& b) {
      return a._v == b._v && a._p == b._p;
    }

    friend bool operator<(ModP const& a, ModP const& b) {
      return a._v < b._v;
    }

    friend std::ostream& operator<<(std::ostream& os, ModP const& x) {
      return os << x._v;
    }

   private:
    static ModP raw(std::int64_t v, std::int64_t p) {
      ModP r;
      r._v = v;
      r._p = p;
      return r;
    }

    void check(ModP const& o) const {
      if (o._p != _p) {
        throw Error(ErrorKind::invalid_input, "mixed moduli in F_p arithmetic");
      }
    }

    std::int64_t _v = 0;
    std::int64_t _p = 2;
  };

  inline ModP zero_like(ModP const& x) {
    return ModP(0, x.modulus());
  }

  inline ModP one_like(ModP const& x) {
    return ModP(1, x.modulus());
  }

  inline ModP from_int_like(std::int64_t k, ModP const& x) {
    return ModP(k, x.modulus());
  }

  inline bool is_zero(ModP const& x) {
    return x.value() == 0;
  }

  inline std::string to_string(ModP const& x) {
    return std::to_string(x.value());
  }

  // Reduces a rational modulo p; throws when p divides the denominator.
  inline ModP reduce_mod(Rational const& x, std::int64_t p) {
    Integer num = boost::multiprecision::numerator(x) % p;
    Integer den = boost::multiprecision::denominator(x) % p;
    if (den == 0) {
      throw Error(ErrorKind::invalid_input,
                  "denominator divisible by " + std::to_string(p));
    }
    return ModP(num.convert_to<std::int64_t>(), p)
           / ModP(den.convert_to<std::int64_t>(), p);
  }

}  // namespace algdyn
