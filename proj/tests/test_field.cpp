#include <catch_amalgamated.hpp>

#include "algdyn/field.hpp"
#include "algdyn/matrix.hpp"
#include "algdyn/polynomial.hpp"

using namespace algdyn;

TEST_CASE("rationals parse and print in lowest terms") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-2/6")) == "-1/3");
  CHECK(to_string(parse_rational("7")) == "7");
  for (char const* bad : {"", "1/0", "4/-2", "x", "1.5", "2/", "/3", "--1"}) {
    CHECK_THROWS_AS(parse_rational(bad), Error);
  }
}

TEST_CASE("prime field arithmetic") {
  CHECK(is_prime(2));
  CHECK(is_prime(31));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));

  for (std::int64_t v = 1; v < 13; ++v) {
    ModP x(v, 13);
    CHECK((x * x.inverse()).value() == 1);
    CHECK((x / x).value() == 1);
  }
  CHECK(ModP(-1, 7).value() == 6);
  CHECK((ModP(3, 7) - ModP(5, 7)).value() == 5);
  CHECK_THROWS_AS(ModP(1, 5) + ModP(1, 7), Error);
  CHECK_THROWS_AS(ModP(0, 5).inverse(), Error);
  CHECK(reduce_mod(Rational(1, 2), 7).value() == 4);
  CHECK_THROWS_AS(reduce_mod(Rational(1, 7), 7), Error);
}

TEST_CASE("matrix rank, kernel and inverse over Q") {
  Matrix<Rational> m({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m) == 2);
  auto ker = null_space_basis(m);
  REQUIRE(ker.size() == 1);
  for (auto const& x : m * ker[0]) CHECK(x == 0);
  CHECK_FALSE(inverse(m).has_value());

  Matrix<Rational> a({{2, 1}, {1, 1}});
  auto             inv = inverse(a);
  REQUIRE(inv);
  CHECK(a * *inv == Matrix<Rational>::identity(2, Rational(0)));
  CHECK(power(a, 0) == Matrix<Rational>::identity(2, Rational(0)));
  CHECK(power(a, 3) == a * a * a);
}

TEST_CASE("ragged or empty matrices are rejected") {
  CHECK_THROWS_AS(Matrix<Rational>(std::vector<std::vector<Rational>>{}), Error);
  CHECK_THROWS_AS(Matrix<Rational>({{1, 2}, {3}}), Error);
}

TEST_CASE("cyclotomic polynomials and minimal polynomials") {
  // Phi_6 = x^2 - x + 1, Phi_12 = x^4 - x^2 + 1
  CHECK(cyclotomic(6) == Polynomial({1, -1, 1}));
  CHECK(cyclotomic(12) == Polynomial({1, 0, -1, 0, 1}));
  CHECK(euler_phi(12) == 4);

  // product of all Phi_d for d | n is x^n - 1
  for (std::size_t n = 1; n <= 15; ++n) {
    Polynomial prod = Polynomial::monomial(0);
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d == 0) prod = prod * cyclotomic(d);
    }
    Polynomial xn = Polynomial::monomial(n) - Polynomial::monomial(0);
    CHECK(prod == xn);
  }

  Matrix<Rational> rot({{0, -1}, {1, 0}});
  CHECK(minimal_polynomial(rot) == Polynomial({1, 0, 1}));
  CHECK(minimal_polynomial(Matrix<Rational>::identity(3, Rational(0))) == Polynomial({-1, 1}));
}
