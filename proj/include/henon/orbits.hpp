#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "henon/map.hpp"
#include "henon/nonlinearity.hpp"
#include "henon/polynomial.hpp"
#include "henon/spectrum.hpp"

namespace henon {

struct PeriodicOrbit {
  int period = 1;
  std::vector<State> points;
  double b_value = 0.0;
  std::vector<std::complex<double>> multipliers;
  double m_x = 0.0;   // product of f'(x_i) along the cycle
  double residual = 0.0;
};

namespace detail {

inline double iterate_1d(const Nonlinearity& f, double x, int p) {
  for (int i = 0; i < p; ++i) x = f(x);
  return x;
}

inline std::vector<int> proper_divisors(int p) {
  std::vector<int> d;
  for (int k = 1; k < p; ++k)
    if (p % k == 0) d.push_back(k);
  return d;
}

}  // namespace detail

/// All periodic orbits of the scalar map f up to period_max inside the
/// interval, found as sign changes of f^p(x) - x on a uniform grid of
/// 10^4 p cells refined by bisection. Points of lower true period are
/// dropped, cyclic duplicates merged, and each orbit is embedded at b = 0
/// with y = 0 in n extra coordinates.
inline std::vector<PeriodicOrbit> find_1d_orbits(const Nonlinearity& f, int period_max,
                                                 double lo, double hi, int n = 1) {
  if (period_max < 1 || period_max > 12)
    throw std::invalid_argument("find_1d_orbits: period_max in [1, 12]");
  if (!(lo < hi)) throw std::invalid_argument("find_1d_orbits: lo < hi");
  if (n < 1) throw std::invalid_argument("find_1d_orbits: n >= 1");

  std::vector<PeriodicOrbit> out;
  const double span = hi - lo;
  for (int p = 1; p <= period_max; ++p) {
    auto g = [&](double x) { return detail::iterate_1d(f, x, p) - x; };
    const int cells = 10000 * p;
    // raw roots of f^p(x) = x by sign change + bisection
    std::vector<double> roots;
    double x_prev = lo;
    double g_prev = g(x_prev);
    for (int k = 1; k <= cells; ++k) {
      const double x_next = lo + span * k / cells;
      const double g_next = g(x_next);
      if (g_prev == 0.0) {
        roots.push_back(x_prev);
      } else if (g_prev * g_next < 0.0) {
        roots.push_back(bisect_root(g, x_prev, x_next, g_prev, g_next, 1e-14));
      }
      x_prev = x_next;
      g_prev = g_next;
    }
    if (g_prev == 0.0) roots.push_back(x_prev);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                roots.end());

    const auto divisors = detail::proper_divisors(p);
    std::vector<double> taken_min;  // canonical (minimal) point of accepted p-orbits
    for (double x0 : roots) {
      bool lower_period = false;
      for (int d : divisors)
        if (std::abs(detail::iterate_1d(f, x0, d) - x0) < 1e-7) {
          lower_period = true;
          break;
        }
      if (lower_period) continue;

      std::vector<double> xs(static_cast<std::size_t>(p));
      xs[0] = x0;
      for (int i = 1; i < p; ++i) xs[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i - 1)]);
      const double xmin = *std::min_element(xs.begin(), xs.end());
      bool duplicate = false;
      for (double t : taken_min)
        if (std::abs(t - xmin) < 1e-7) {
          duplicate = true;
          break;
        }
      if (duplicate) continue;
      taken_min.push_back(xmin);

      PeriodicOrbit o;
      o.period = p;
      o.b_value = 0.0;
      o.points.reserve(static_cast<std::size_t>(p));
      for (double x : xs) o.points.push_back(State{x, std::vector<double>(static_cast<std::size_t>(n), 0.0)});
      o.m_x = multiplier_1d(f, o.points);
      o.residual = std::abs(detail::iterate_1d(f, x0, p) - x0);
      o.multipliers.assign(static_cast<std::size_t>(n + 1), {0.0, 0.0});
      o.multipliers[0] = {o.m_x, 0.0};
      out.push_back(std::move(o));
    }
  }
  return out;
}

/// A b = 0 orbit persists under small coupling when its 1-D multiplier is
/// bounded away from 0 and from the unit circle.
inline bool structural_stability(const PeriodicOrbit& o, double delta = 1e-6) {
  if (o.b_value != 0.0)
    throw std::invalid_argument("structural_stability: defined for b = 0 orbits");
  const double m = std::abs(o.m_x);
  return m > delta && std::abs(m - 1.0) > delta;
}

enum class ContinuationStatus { Reached, UnitCircle, NewtonDivergence };

inline const char* to_string(ContinuationStatus s) {
  switch (s) {
    case ContinuationStatus::Reached: return "reached";
    case ContinuationStatus::UnitCircle: return "unit-circle-collision";
    case ContinuationStatus::NewtonDivergence: return "newton-divergence";
  }
  return "unknown";
}

struct ContinuationResult {
  std::vector<PeriodicOrbit> history;  // first entry is the b = 0 orbit
  ContinuationStatus status = ContinuationStatus::Reached;
  std::string message;
};

namespace detail {

/// One Newton solve of the stacked cycle system G_i = T(s_i) - s_{i+1 mod p}
/// at fixed parameters; z holds the p states contiguously. Returns the final
/// residual, or infinity on failure.
inline double newton_cycle(const MapParams& p, Eigen::VectorXd& z, int period,
                           int max_iters = 50) {
  const int m = p.n() + 1;
  const int dim = m * period;
  Eigen::VectorXd g(dim);
  Eigen::MatrixXd jac(dim, dim);
  State s;
  s.y.resize(static_cast<std::size_t>(p.n()));
  for (int it = 0; it < max_iters; ++it) {
    jac.setZero();
    for (int i = 0; i < period; ++i) {
      const int row = m * i;
      const int nxt = m * ((i + 1) % period);
      s.x = z(row);
      for (int k = 0; k < p.n(); ++k) s.y[static_cast<std::size_t>(k)] = z(row + 1 + k);
      const State img = step(p, s);
      g(row) = img.x - z(nxt);
      for (int k = 0; k < p.n(); ++k) g(row + 1 + k) = img.y[static_cast<std::size_t>(k)] - z(nxt + 1 + k);
      jac.block(row, row, m, m) = jacobian_at(p, s.x);
      for (int k = 0; k < m; ++k) jac(row + k, nxt + k) -= 1.0;
    }
    const double res = g.lpNorm<Eigen::Infinity>();
    if (res < 1e-12) return res;
    const Eigen::VectorXd dz = jac.partialPivLu().solve(-g);
    if (!dz.allFinite()) return std::numeric_limits<double>::infinity();
    z += dz;
    if (!z.allFinite()) return std::numeric_limits<double>::infinity();
  }
  // converged late or not at all; recompute the residual once more
  double worst = 0.0;
  for (int i = 0; i < period; ++i) {
    const int row = m * i;
    const int nxt = m * ((i + 1) % period);
    s.x = z(row);
    for (int k = 0; k < p.n(); ++k) s.y[static_cast<std::size_t>(k)] = z(row + 1 + k);
    const State img = step(p, s);
    worst = std::max(worst, std::abs(img.x - z(nxt)));
    for (int k = 0; k < p.n(); ++k)
      worst = std::max(worst, std::abs(img.y[static_cast<std::size_t>(k)] - z(nxt + 1 + k)));
  }
  return worst;
}

inline PeriodicOrbit orbit_from_vector(const MapParams& p, const Eigen::VectorXd& z,
                                       int period, const Nonlinearity& f) {
  const int m = p.n() + 1;
  PeriodicOrbit o;
  o.period = period;
  o.b_value = p.b();
  for (int i = 0; i < period; ++i) {
    State s;
    s.x = z(m * i);
    s.y.resize(static_cast<std::size_t>(p.n()));
    for (int k = 0; k < p.n(); ++k) s.y[static_cast<std::size_t>(k)] = z(m * i + 1 + k);
    o.points.push_back(std::move(s));
  }
  o.m_x = multiplier_1d(f, o.points);
  o.residual = cycle_residual(p, o.points);
  o.multipliers = orbit_multipliers(p, o.points);
  return o;
}

}  // namespace detail

/// Continues a structurally stable b = 0 orbit toward b_target by Newton's
/// method on the stacked cycle system, with linear b-steps and step halving
/// on failure. Stops early when a multiplier touches the unit circle or when
/// halving bottoms out; partial history is always returned.
inline ContinuationResult continue_in_b(const MapParams& p0, const PeriodicOrbit& o,
                                        double b_target, int steps) {
  if (p0.b() != 0.0) throw std::invalid_argument("continue_in_b: start map must have b = 0");
  if (o.b_value != 0.0) throw std::invalid_argument("continue_in_b: start orbit must have b = 0");
  if (!(std::abs(b_target) < 1.0)) throw std::invalid_argument("continue_in_b: |b_target| < 1");
  if (steps < 1) throw std::invalid_argument("continue_in_b: steps >= 1");
  if (!structural_stability(o))
    throw std::invalid_argument("continue_in_b: orbit is not structurally stable");
  if (static_cast<int>(o.points.size()) != o.period || o.points.empty())
    throw std::invalid_argument("continue_in_b: malformed orbit");

  ContinuationResult result;
  result.history.push_back(o);
  if (b_target == 0.0) return result;

  const int m = p0.n() + 1;
  Eigen::VectorXd z(m * o.period);
  for (int i = 0; i < o.period; ++i) {
    z(m * i) = o.points[static_cast<std::size_t>(i)].x;
    for (int k = 0; k < p0.n(); ++k)
      z(m * i + 1 + k) = o.points[static_cast<std::size_t>(i)].y[static_cast<std::size_t>(k)];
  }

  const double db0 = b_target / steps;
  const double db_floor = std::min(1e-6, 0.5 * std::abs(db0));
  double b_cur = 0.0;
  double db = db0;
  Eigen::VectorXd z_accepted = z;
  while (b_cur != b_target) {
    double b_next = b_cur + db;
    if ((db > 0.0 && b_next > b_target) || (db < 0.0 && b_next < b_target) ||
        std::abs(b_target - b_next) < 0.5 * std::abs(db))
      b_next = b_target;
    const MapParams pb(p0.f(), b_next, p0.a());
    z = z_accepted;
    const double res = detail::newton_cycle(pb, z, o.period);
    if (res < 1e-10) {
      b_cur = b_next;
      z_accepted = z;
      PeriodicOrbit ob = detail::orbit_from_vector(pb, z, o.period, p0.f());
      result.history.push_back(ob);
      for (const auto& lam : ob.multipliers) {
        const double mod = std::abs(lam);
        if (mod >= 1.0 - 1e-6 && mod <= 1.0 + 1e-6) {
          result.status = ContinuationStatus::UnitCircle;
          result.message = "multiplier collision with unit circle at b = " + std::to_string(b_cur);
          return result;
        }
      }
      db = (std::abs(db) < std::abs(db0)) ? db * 2.0 : db0;
    } else {
      db *= 0.5;
      if (std::abs(db) < db_floor) {
        result.status = ContinuationStatus::NewtonDivergence;
        result.message = "Newton divergence near b = " + std::to_string(b_cur + 2.0 * db);
        return result;
      }
    }
  }
  result.status = ContinuationStatus::Reached;
  return result;
}

/// Per-step multiplier moduli, modulus-descending, for continuity checks
/// along a continuation history.
inline std::vector<std::pair<double, std::vector<double>>> multiplier_track(
    const std::vector<PeriodicOrbit>& history) {
  std::vector<std::pair<double, std::vector<double>>> table;
  table.reserve(history.size());
  for (const auto& o : history) {
    std::vector<double> mods;
    mods.reserve(o.multipliers.size());
    for (const auto& lam : o.multipliers) mods.push_back(std::abs(lam));
    std::sort(mods.begin(), mods.end(), std::greater<>());
    table.emplace_back(o.b_value, std::move(mods));
  }
  return table;
}

}  // namespace henon
