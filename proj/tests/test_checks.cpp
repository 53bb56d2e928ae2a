#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "henon/checks.hpp"
#include "henon/map.hpp"
#include "henon/trapping.hpp"

using henon::MapParams;
using henon::Nonlinearity;
using henon::TrappingDomain;

TEST_CASE("l1 ball sampler stays inside and fills the ball") {
  henon::UniformRng rng(henon::mix_seed(9001, 0));
  for (int n = 1; n <= 4; ++n) {
    double max_norm = 0.0;
    for (int k = 0; k < 2000; ++k) {
      const auto v = henon::sample_l1_ball(rng, n, 0.7);
      REQUIRE(static_cast<int>(v.size()) == n);
      const double norm = henon::manhattan_norm(v);
      CHECK(norm <= 0.7 + 1e-12);
      max_norm = std::max(max_norm, norm);
    }
    CHECK(max_norm > 0.6);
  }
  CHECK(henon::sample_l1_ball(rng, 2, 0.0) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("y-ball contraction check") {
  SECTION("passes on a certified domain") {
    const MapParams p(Nonlinearity::quadratic(0.9), 0.3);
    const auto dom = henon::quadratic_trapping_domain(0.9, 0.3, 0.0);
    REQUIRE(dom.has_value());
    const auto rep = henon::y_ball_check(p, *dom, 5000, 1);
    CHECK(rep.pass);
    CHECK(rep.samples == 5000);
    CHECK(rep.worst_margin >= 0.0);
    CHECK_FALSE(rep.counterexample.has_value());
  }
  SECTION("fails with a counterexample when gamma is halved") {
    const MapParams p(Nonlinearity::quadratic(0.9), 0.3);
    auto dom = *henon::quadratic_trapping_domain(0.9, 0.3, 0.0);
    dom.gamma *= 0.5;
    const auto rep = henon::y_ball_check(p, dom, 5000, 1);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.counterexample.has_value());
    // The witness state really does leave the shrunken ball in one step.
    const auto next = henon::step(p, *rep.counterexample);
    CHECK(next.y_norm() > dom.gamma);
  }
  SECTION("b = 0 passes with the zero ball") {
    const MapParams p(Nonlinearity::quadratic(1.5), 0.0);
    const auto dom = *henon::quadratic_trapping_domain(1.5, 0.0, 0.0);
    CHECK(dom.gamma == 0.0);
    CHECK(henon::y_ball_check(p, dom, 100, 1).pass);
  }
  SECTION("multi-component y") {
    const MapParams p(Nonlinearity::quadratic(0.5), 0.2, {0.3, -0.15});
    const auto dom = *henon::quadratic_trapping_domain(0.5, 0.2, 0.3);
    CHECK(henon::y_ball_check(p, dom, 5000, 2).pass);
  }
}

TEST_CASE("envelope sandwich check") {
  const MapParams p(Nonlinearity::quadratic(0.9), 0.3);
  const auto dom = *henon::quadratic_trapping_domain(0.9, 0.3, 0.0);
  SECTION("passes on a certified domain") {
    const auto rep = henon::sandwich_check(p, dom, 5000, 1);
    CHECK(rep.pass);
    CHECK(rep.check == "envelope sandwich");
  }
  SECTION("fails when the x-interval outgrows the gamma-ball") {
    TrappingDomain wide = dom;
    wide.alpha_plus *= 2.0;
    wide.alpha_minus *= 2.0;
    const auto rep = henon::sandwich_check(p, wide, 5000, 1);
    CHECK_FALSE(rep.pass);
    CHECK(rep.counterexample.has_value());
  }
}

TEST_CASE("grid oracle confirms closed-form certificates") {
  SECTION("quadratic n = 1") {
    const MapParams p(Nonlinearity::quadratic(0.9), 0.3);
    const auto dom = *henon::quadratic_trapping_domain(0.9, 0.3, 0.0);
    const auto rep = henon::brute_force_trap_oracle(p, dom, 40, 300);
    CHECK(rep.pass);
    CHECK(rep.escaped == 0);
    CHECK(rep.worst_x_margin >= 0.0);
    CHECK(rep.worst_y_margin >= 0.0);
  }
  SECTION("quadratic n = 3 with mixed-sign a") {
    const MapParams p(Nonlinearity::quadratic(0.7), 0.2, {0.3, -0.15});
    const auto dom = *henon::quadratic_trapping_domain(0.7, 0.2, 0.3);
    const auto rep = henon::brute_force_trap_oracle(p, dom, 12, 200);
    CHECK(rep.pass);
  }
  SECTION("cubic n = 1") {
    const MapParams p(Nonlinearity::cubic(2.0), 0.1);
    const auto dom = *henon::cubic_trapping_domain(2.0, 0.1, 0.0);
    const auto rep = henon::brute_force_trap_oracle(p, dom, 40, 300);
    CHECK(rep.pass);
  }
  SECTION("decoupled cubic is exactly tight at the box corners") {
    // At mu = 1.5, b = 0 the corners form a superstable 2-cycle, so orbits
    // touch the boundary: the margin is zero up to representation error.
    const MapParams p(Nonlinearity::cubic(1.5), 0.0);
    const auto dom = *henon::cubic_trapping_domain(1.5, 0.0, 0.0);
    const auto rep = henon::brute_force_trap_oracle(p, dom, 60, 200);
    CHECK(rep.pass);
    CHECK(rep.escaped == 0);
    CHECK(rep.worst_x_margin >= -1e-14);
    CHECK(rep.worst_x_margin < 1e-6);
  }
  SECTION("an inflated box fails with an escape or margin violation") {
    const MapParams p(Nonlinearity::quadratic(1.9), 0.3);
    TrappingDomain fake{-2.5, 2.5, 0.75, henon::CertificateKind::OracleOnly};
    const auto rep = henon::brute_force_trap_oracle(p, fake, 25, 200);
    CHECK_FALSE(rep.pass);
    CHECK(rep.counterexample.has_value());
  }
  SECTION("input validation") {
    const MapParams p(Nonlinearity::quadratic(0.9), 0.3);
    const auto dom = *henon::quadratic_trapping_domain(0.9, 0.3, 0.0);
    CHECK_THROWS_AS(henon::brute_force_trap_oracle(p, dom, 1, 10), std::invalid_argument);
    CHECK_THROWS_AS(henon::brute_force_trap_oracle(p, dom, 10, 0), std::invalid_argument);
  }
}

TEST_CASE("oracle seed layout hits the gamma sphere") {
  const auto seeds = henon::detail::oracle_y_seeds(2, 0.4, 40);
  REQUIRE_FALSE(seeds.empty());
  CHECK(seeds.front() == std::vector<double>{0.0, 0.0});
  double max_norm = 0.0;
  for (const auto& s : seeds) {
    const double norm = henon::manhattan_norm(s);
    CHECK(norm <= 0.4 + 1e-12);
    max_norm = std::max(max_norm, norm);
  }
  CHECK(max_norm > 0.39);
  CHECK(henon::detail::oracle_y_seeds(2, 0.0, 40) ==
        std::vector<std::vector<double>>{{0.0, 0.0}});
}
