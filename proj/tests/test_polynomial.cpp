#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "henon/polynomial.hpp"
#include "henon/random.hpp"
#include "henon/roots.hpp"

using henon::Polynomial;

TEST_CASE("polynomial arithmetic and evaluation") {
  const Polynomial p({1.0, 2.0, 3.0});   // 1 + 2x + 3x^2
  const Polynomial q({0.0, -1.0});       // -x

  CHECK(p.degree() == 2);
  CHECK(p(2.0) == Catch::Approx(17.0));
  CHECK((p + q)(2.0) == Catch::Approx(15.0));
  CHECK((p - q)(2.0) == Catch::Approx(19.0));
  CHECK((p * q)(2.0) == Catch::Approx(-34.0));
  CHECK((p * 0.5)(2.0) == Catch::Approx(8.5));

  const Polynomial d = p.derivative();
  CHECK(d.degree() == 1);
  CHECK(d(2.0) == Catch::Approx(14.0));

  CHECK(Polynomial().is_zero());
  CHECK(Polynomial().derivative().is_zero());

  const Polynomial m = Polynomial::monomial(3, 2.0);
  CHECK(m(2.0) == Catch::Approx(16.0));
  CHECK(p.shifted_up(2)(2.0) == Catch::Approx(4.0 * p(2.0)));

  const std::complex<double> z(0.5, 1.0);
  const auto w = p(z);
  CHECK(std::abs(w - (1.0 + 2.0 * z + 3.0 * z * z)) < 1e-15);
}

TEST_CASE("bisection finds roots and rejects bad brackets") {
  auto f = [](double x) { return x * x - 2.0; };
  const double r = henon::bisect_root(f, 0.0, 2.0, f(0.0), f(2.0), 1e-14);
  CHECK(r == Catch::Approx(std::sqrt(2.0)).epsilon(1e-13));

  auto g = [](double x) { return x; };
  CHECK(henon::bisect_root(g, -1.0, 1.0, -1.0, 1.0, 1e-14) == Catch::Approx(0.0).margin(1e-14));
  CHECK(henon::bisect_root(g, 0.0, 1.0, 0.0, 1.0, 1e-14) == 0.0);

  CHECK_THROWS_AS(henon::bisect_root(f, 2.0, 3.0, f(2.0), f(3.0), 1e-14),
                  std::invalid_argument);
}

TEST_CASE("grid scan catches all sign changes") {
  auto f = [](double x) { return std::sin(x); };
  const auto roots = henon::grid_roots(f, -7.0, 7.0, 1000, 1e-13);
  REQUIRE(roots.size() == 5);
  for (std::size_t k = 0; k < roots.size(); ++k)
    CHECK(roots[k] == Catch::Approx((static_cast<double>(k) - 2.0) * M_PI).margin(1e-11));
}

TEST_CASE("companion roots of small polynomials") {
  // (x - 1)(x + 2)(x - 3) = x^3 - 2x^2 - 5x + 6
  const Polynomial p({6.0, -5.0, -2.0, 1.0});
  const auto roots = henon::real_roots_in_interval(p, -10.0, 10.0);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == Catch::Approx(-2.0).epsilon(1e-12));
  CHECK(roots[1] == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(roots[2] == Catch::Approx(3.0).epsilon(1e-12));

  const auto middle = henon::real_roots_in_interval(p, 0.0, 2.0);
  REQUIRE(middle.size() == 1);
  CHECK(middle[0] == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(henon::real_roots_in_interval(Polynomial({1.0}), -1.0, 1.0).empty());

  // x^2 + 1: no real roots.
  CHECK(henon::real_roots_in_interval(Polynomial({1.0, 0.0, 1.0}), -5.0, 5.0).empty());

  const auto all = henon::polynomial_roots(p);
  REQUIRE(all.size() == 3);
  CHECK(std::abs(all[0]) >= std::abs(all[1]));
  CHECK(std::abs(all[1]) >= std::abs(all[2]));
}

TEST_CASE("cubic growth factorization identity") {
  // p^3 - 6.75 p - 6.75 has the double root -1.5 and simple root 3, which is
  // why the cubic coupling bound is tight exactly at growth factor 3.
  const Polynomial lhs({-6.75, -6.75, 0.0, 1.0});
  const Polynomial rhs = Polynomial({-3.0, 1.0}) * Polynomial({1.5, 1.0}) *
                         Polynomial({1.5, 1.0});
  REQUIRE(lhs.coeffs().size() == rhs.coeffs().size());
  for (std::size_t k = 0; k < lhs.coeffs().size(); ++k)
    CHECK(lhs.coeffs()[k] == Catch::Approx(rhs.coeffs()[k]).margin(1e-12));

  const auto roots = henon::real_roots_in_interval(lhs, -5.0, 5.0);
  REQUIRE(roots.size() >= 2);
  CHECK(roots.front() == Catch::Approx(-1.5).margin(1e-6));
  CHECK(roots.back() == Catch::Approx(3.0).margin(1e-9));
}

TEST_CASE("deterministic rng streams") {
  henon::UniformRng a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const double ua = a.unit(), ub = b.unit(), uc = c.unit();
    all_equal = all_equal && ua == ub;
    any_diff = any_diff || ua != uc;
    CHECK(ua >= 0.0);
    CHECK(ua < 1.0);
  }
  CHECK(all_equal);
  CHECK(any_diff);
  CHECK(henon::mix_seed(1, 2) != henon::mix_seed(1, 3));
  CHECK(henon::mix_seed(1, 2) == henon::mix_seed(1, 2));
}
