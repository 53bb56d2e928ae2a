#include <catch2/catch_amalgamated.hpp>

#include "henon/henon.hpp"

TEST_CASE("headers compile and a basic certificate comes out") {
  auto dom = henon::quadratic_trapping_domain(0.9, 0.3, 0.0);
  REQUIRE(dom.has_value());
  CHECK(dom->alpha_plus == Catch::Approx(9.0 / 7.0));
  CHECK(dom->gamma == Catch::Approx(0.27 / 0.7));
}
