#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "henon/map.hpp"
#include "henon/orbits.hpp"
#include "henon/spectrum.hpp"

using henon::MapParams;
using henon::Nonlinearity;
using henon::PeriodicOrbit;

TEST_CASE("orbit search at b = 0") {
  SECTION("quadratic fixed points") {
    const auto orbits = henon::find_1d_orbits(Nonlinearity::quadratic(0.9), 1, -3.0, 3.0, 1);
    REQUIRE(orbits.size() == 2);
    const double s = std::sqrt(1.0 + 4.0 * 0.9);
    CHECK(orbits[0].points[0].x == Catch::Approx((-1.0 - s) / 2.0).epsilon(1e-12));
    CHECK(orbits[1].points[0].x == Catch::Approx((-1.0 + s) / 2.0).epsilon(1e-12));
    for (const auto& o : orbits) {
      CHECK(o.period == 1);
      CHECK(o.b_value == 0.0);
      CHECK(o.residual < 1e-10);
      CHECK(o.m_x == Catch::Approx(-2.0 * o.points[0].x).epsilon(1e-12));
      REQUIRE(o.points[0].y.size() == 1);
      CHECK(o.points[0].y[0] == 0.0);
      REQUIRE(o.multipliers.size() == 2);
      CHECK(o.multipliers[0].real() == Catch::Approx(o.m_x));
      CHECK(std::abs(o.multipliers[1]) == 0.0);
    }
  }
  SECTION("period-2 cycle of mu = 1 is {0, 1}") {
    const auto orbits = henon::find_1d_orbits(Nonlinearity::quadratic(1.0), 2, -3.0, 3.0, 1);
    std::vector<PeriodicOrbit> two;
    for (const auto& o : orbits)
      if (o.period == 2) two.push_back(o);
    REQUIRE(two.size() == 1);
    std::set<double> xs;
    for (const auto& s : two[0].points) xs.insert(std::round(s.x * 1e9) / 1e9);
    CHECK(xs == std::set<double>{0.0, 1.0});
    CHECK(two[0].m_x == Catch::Approx(0.0).margin(1e-9));
  }
  SECTION("fixed points are not re-reported at period 2") {
    const auto orbits = henon::find_1d_orbits(Nonlinearity::quadratic(1.0), 2, -3.0, 3.0, 1);
    int fixed = 0, cycles = 0;
    for (const auto& o : orbits) (o.period == 1 ? fixed : cycles) += 1;
    CHECK(fixed == 2);
    CHECK(cycles == 1);
  }
  SECTION("each cycle is reported once, not once per phase") {
    // mu = 1.4: the quadratic map has fixed points, a 2-cycle, and a 4-cycle.
    const auto orbits = henon::find_1d_orbits(Nonlinearity::quadratic(1.4), 4, -3.0, 3.0, 1);
    int per4 = 0;
    for (const auto& o : orbits)
      if (o.period == 4) ++per4;
    CHECK(per4 == 1);
    for (const auto& o : orbits) {
      // Every reported point really lies on a cycle of the stated period.
      for (const auto& s : o.points) {
        double x = s.x;
        for (int k = 0; k < o.period; ++k) x = 1.4 - x * x;
        CHECK(x == Catch::Approx(s.x).margin(1e-7));
      }
    }
  }
  SECTION("cubic fixed points") {
    const auto orbits = henon::find_1d_orbits(Nonlinearity::cubic(2.0), 1, -3.0, 3.0, 1);
    REQUIRE(orbits.size() == 3);
    CHECK(orbits[0].points[0].x == Catch::Approx(-std::sqrt(3.0)).epsilon(1e-12));
    CHECK(orbits[1].points[0].x == Catch::Approx(0.0).margin(1e-12));
    CHECK(orbits[2].points[0].x == Catch::Approx(std::sqrt(3.0)).epsilon(1e-12));
  }
  SECTION("embedding dimension") {
    const auto orbits = henon::find_1d_orbits(Nonlinearity::quadratic(0.9), 1, -3.0, 3.0, 3);
    REQUIRE_FALSE(orbits.empty());
    CHECK(orbits[0].points[0].y == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(orbits[0].multipliers.size() == 4);
  }
  SECTION("input validation") {
    CHECK_THROWS_AS(henon::find_1d_orbits(Nonlinearity::quadratic(1.0), 0, -1.0, 1.0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(henon::find_1d_orbits(Nonlinearity::quadratic(1.0), 13, -1.0, 1.0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(henon::find_1d_orbits(Nonlinearity::quadratic(1.0), 2, 1.0, -1.0, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("structural stability filter") {
  PeriodicOrbit o;
  o.period = 1;
  o.b_value = 0.0;
  o.m_x = 0.5;
  CHECK(henon::structural_stability(o));
  o.m_x = 1.0;
  CHECK_FALSE(henon::structural_stability(o));
  o.m_x = -1.0 + 1e-9;
  CHECK_FALSE(henon::structural_stability(o));
  o.m_x = 0.0;
  CHECK_FALSE(henon::structural_stability(o));
  o.m_x = 1e-9;
  CHECK_FALSE(henon::structural_stability(o));
  o.m_x = -3.4;
  CHECK(henon::structural_stability(o));
  o.m_x = 1.0 + 2e-6;
  CHECK(henon::structural_stability(o));
  o.b_value = 0.1;
  CHECK_THROWS_AS(henon::structural_stability(o), std::invalid_argument);
}

TEST_CASE("continuation in b") {
  const MapParams p0(Nonlinearity::quadratic(0.9), 0.0);
  const auto orbits = henon::find_1d_orbits(p0.f(), 1, -3.0, 3.0, 1);
  REQUIRE(orbits.size() == 2);
  const PeriodicOrbit& plus = orbits[1];  // x* = (-1 + sqrt(4.6))/2 > 0

  SECTION("b_target = 0 returns the seed orbit") {
    const auto res = henon::continue_in_b(p0, plus, 0.0, 5);
    CHECK(res.status == henon::ContinuationStatus::Reached);
    CHECK(res.history.size() == 1);
    CHECK(res.history.front().points[0].x == plus.points[0].x);
  }
  SECTION("reaches b = 0.3 at the closed-form fixed point") {
    const auto res = henon::continue_in_b(p0, plus, 0.3, 30);
    REQUIRE(res.status == henon::ContinuationStatus::Reached);
    const auto& last = res.history.back();
    CHECK(last.b_value == 0.3);
    const double mu = 0.9, b = 0.3;
    const double expect = ((b - 1.0) + std::sqrt((1.0 - b) * (1.0 - b) + 4.0 * mu)) / 2.0;
    CHECK(last.points[0].x == Catch::Approx(expect).epsilon(1e-9));
    CHECK(last.points[0].y[0] == Catch::Approx(b * expect).epsilon(1e-9));
    CHECK(last.residual < 1e-10);
    // History is monotone in b from 0 to the target.
    CHECK(res.history.front().b_value == 0.0);
    for (std::size_t k = 1; k < res.history.size(); ++k)
      CHECK(res.history[k].b_value > res.history[k - 1].b_value);
  }
  SECTION("negative b works the same way") {
    const auto res = henon::continue_in_b(p0, plus, -0.25, 25);
    REQUIRE(res.status == henon::ContinuationStatus::Reached);
    const double mu = 0.9, b = -0.25;
    const double expect = ((b - 1.0) + std::sqrt((1.0 - b) * (1.0 - b) + 4.0 * mu)) / 2.0;
    CHECK(res.history.back().points[0].x == Catch::Approx(expect).epsilon(1e-9));
  }
  SECTION("small target below the step floor still lands exactly") {
    const auto res = henon::continue_in_b(p0, plus, 1e-7, 4);
    REQUIRE(res.status == henon::ContinuationStatus::Reached);
    CHECK(res.history.back().b_value == 1e-7);
  }
  SECTION("multiplier drift is O(b) for small b") {
    const auto res = henon::continue_in_b(p0, plus, 1e-3, 10);
    REQUIRE(res.status == henon::ContinuationStatus::Reached);
    const auto& last = res.history.back();
    CHECK(std::abs(last.points[0].x - plus.points[0].x) < 10.0 * 1e-3);
    REQUIRE(last.multipliers.size() == 2);
    CHECK(std::abs(last.multipliers[0].real() - plus.m_x) < 10.0 * 1e-3);
    CHECK(std::abs(last.multipliers[1]) < 10.0 * 1e-3);
  }
  SECTION("rejects bad inputs") {
    CHECK_THROWS_AS(henon::continue_in_b(p0, plus, 1.0, 10), std::invalid_argument);
    const MapParams coupled(Nonlinearity::quadratic(0.9), 0.2);
    CHECK_THROWS_AS(henon::continue_in_b(coupled, plus, 0.3, 10), std::invalid_argument);
    PeriodicOrbit unstable = plus;
    unstable.m_x = 1.0;
    CHECK_THROWS_AS(henon::continue_in_b(p0, unstable, 0.3, 10), std::invalid_argument);
    CHECK_THROWS_AS(henon::continue_in_b(p0, plus, 0.3, 0), std::invalid_argument);
  }
}

TEST_CASE("multiplier track") {
  const MapParams p0(Nonlinearity::quadratic(0.9), 0.0);
  const auto orbits = henon::find_1d_orbits(p0.f(), 1, -3.0, 3.0, 1);
  const auto res = henon::continue_in_b(p0, orbits[1], 0.2, 10);
  const auto track = henon::multiplier_track(res.history);
  REQUIRE(track.size() == res.history.size());
  CHECK(track.front().first == 0.0);
  REQUIRE(track.front().second.size() == 2);
  CHECK(track.front().second[0] == Catch::Approx(std::abs(orbits[1].m_x)));
  CHECK(track.front().second[1] == 0.0);
  for (const auto& [b, mods] : track) {
    REQUIRE(mods.size() == 2);
    CHECK(mods[0] >= mods[1]);
  }
}
