#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "henon/map.hpp"
#include "henon/nonlinearity.hpp"
#include "henon/polynomial.hpp"

namespace henon {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Self-consistent l1 radius for the box |x| < mu - gamma:
/// gamma = (mu - gamma)|b|/(1 - a_bound) solved for gamma.
inline double horseshoe_gamma(double mu, double b, double a_bound) {
  if (!(mu > 0.0)) throw std::invalid_argument("horseshoe_gamma: mu > 0");
  if (!(std::abs(b) < 1.0) || !(a_bound >= 0.0 && a_bound < 1.0))
    throw std::invalid_argument("horseshoe_gamma: |b| < 1, a_bound in [0,1)");
  return mu * std::abs(b) / (1.0 - a_bound + std::abs(b));
}

/// Stretch-across condition for f(x) = mu - x^2 on the box |x| < mu - gamma:
/// the escape fold sqrt(2(mu + gamma)) must land inside the box.
inline bool horseshoe_condition(double mu, double gamma) {
  if (!(mu > 0.0) || gamma < 0.0)
    throw std::invalid_argument("horseshoe_condition: mu > 0, gamma >= 0");
  if (!(mu - gamma > 0.0)) throw std::domain_error("domain degenerate: mu - gamma <= 0");
  return std::sqrt(2.0 * (mu + gamma)) < mu - gamma;
}

struct EscapeSets {
  Interval inner;             // |x| < sqrt(2 gamma): image overshoots the right edge
  double outer_threshold = 0; // |x| > sqrt(2(mu + gamma)): image exits on the left
};

inline EscapeSets escape_intervals(double mu, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("escape_intervals: gamma >= 0");
  const double r = std::sqrt(2.0 * gamma);
  return {{-r, r}, std::sqrt(2.0 * (mu + gamma))};
}

struct HorseshoeReport {
  double mu = 0.0;
  double gamma = 0.0;
  bool condition_holds = false;
  Interval domain;             // x-box, symmetric: (-(mu-gamma), mu-gamma)
  Interval escape_inner;
  double escape_outer_threshold = 0.0;
  Interval strip_left;
  Interval strip_right;
  double strip_gap = 0.0;
  bool covering_verified = false;
  int lines_checked = 0;
  int points_per_line = 0;
  double min_endpoint_clearance = std::numeric_limits<double>::infinity();
  double min_apex_clearance = std::numeric_limits<double>::infinity();
  std::string failure;
};

namespace detail {

template <class Arc>
inline double refine_crossing(const Arc& arc, double level, double lo, double hi) {
  auto g = [&](double x) { return arc(x) - level; };
  return bisect_root(g, lo, hi, g(lo), g(hi), 1e-10);
}

}  // namespace detail

/// Verifies the covering geometry line by line: for horizontal lines
/// y = const in the gamma-ball, the image arc x -> f(x) + sum(y) must dip
/// under the left edge at both ends, clear the right edge at the apex, and
/// cross the box exactly twice with monotone branches. Reports the two
/// vertical strips whose images cross the box for every sampled line.
inline HorseshoeReport verify_covering(const MapParams& p, int line_count,
                                       int points_per_line,
                                       std::optional<double> gamma_override = std::nullopt) {
  if (p.f().kind() != NonlinearityKind::Quadratic)
    throw std::invalid_argument("verify_covering: quadratic nonlinearity required");
  if (line_count < 1) throw std::invalid_argument("verify_covering: line_count >= 1");
  if (points_per_line < 8) throw std::invalid_argument("verify_covering: points_per_line >= 8");

  const double mu = p.f().mu();
  const double gamma =
      gamma_override ? *gamma_override : horseshoe_gamma(mu, p.b(), p.a_bound());

  HorseshoeReport rep;
  rep.mu = mu;
  rep.gamma = gamma;
  rep.points_per_line = points_per_line;
  const EscapeSets esc = escape_intervals(mu, gamma);
  rep.escape_inner = esc.inner;
  rep.escape_outer_threshold = esc.outer_threshold;
  rep.condition_holds = horseshoe_condition(mu, gamma);
  const double edge = mu - gamma;
  rep.domain = {-edge, edge};
  if (!rep.condition_holds) {
    rep.failure = "stretch condition fails";
    return rep;
  }

  // Offsets c = sum(y) of the sampled lines, inset 1% from the open ball
  // boundary; the extreme lines have degenerate geometry.
  std::vector<double> offsets;
  if (gamma == 0.0 || line_count == 1) {
    offsets.push_back(0.0);
  } else {
    const double cmax = 0.99 * gamma;
    for (int k = 0; k < line_count; ++k)
      offsets.push_back(-cmax + 2.0 * cmax * k / (line_count - 1));
  }
  const double c_min = *std::min_element(offsets.begin(), offsets.end());
  const double c_max = *std::max_element(offsets.begin(), offsets.end());

  const double h = 2.0 * edge / (points_per_line - 1);
  // Narrowest features the sampling must resolve: the apex cap above the
  // right edge (half-width sqrt(c + gamma)) and the crossing strips.
  if (gamma > 0.0) {
    const double apex_cap = std::sqrt(c_min + gamma);
    const double strip = std::sqrt(2.0 * mu + c_min - gamma) - std::sqrt(c_max + gamma);
    const double feature = std::min(apex_cap, strip);
    if (h > 0.25 * feature) {
      const int need = static_cast<int>(std::ceil(8.0 * edge / feature)) + 1;
      throw std::runtime_error("undersampled: need points_per_line >= " +
                               std::to_string(need));
    }
  }
  const double apex_tol = std::max(1e-12 * (1.0 + edge), h * h);

  rep.strip_left = {-std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
  rep.strip_right = rep.strip_left;

  std::vector<double> val(static_cast<std::size_t>(points_per_line));
  for (double c : offsets) {
    auto arc = [&](double x) { return p.f()(x) + c; };
    for (int j = 0; j < points_per_line; ++j)
      val[static_cast<std::size_t>(j)] = arc(-edge + h * j);
    auto x_at = [&](int j) { return -edge + h * j; };

    const double end_clear = -edge - std::max(val.front(), val.back());
    rep.min_endpoint_clearance = std::min(rep.min_endpoint_clearance, end_clear);
    if (!(end_clear > 0.0)) {
      rep.failure = "arc endpoint does not exit left of the box";
      return rep;
    }

    int apex_j = 0;
    for (int j = 1; j < points_per_line; ++j)
      if (val[static_cast<std::size_t>(j)] > val[static_cast<std::size_t>(apex_j)]) apex_j = j;
    const double apex_clear = val[static_cast<std::size_t>(apex_j)] - edge;
    rep.min_apex_clearance = std::min(rep.min_apex_clearance, apex_clear);
    if (!(apex_clear >= -apex_tol)) {
      rep.failure = "arc apex does not reach the right edge";
      return rep;
    }

    auto crossings = [&](double level) {
      std::vector<int> idx;
      for (int j = 0; j + 1 < points_per_line; ++j) {
        const double u = val[static_cast<std::size_t>(j)] - level;
        const double v = val[static_cast<std::size_t>(j + 1)] - level;
        if (u == 0.0 || u * v < 0.0) idx.push_back(j);
      }
      return idx;
    };
    const auto lower_idx = crossings(-edge);
    const auto upper_idx = crossings(edge);
    if (lower_idx.size() != 2) {
      rep.failure = "expected two crossings of the left edge, found " +
                    std::to_string(lower_idx.size());
      return rep;
    }
    const double low1 = detail::refine_crossing(arc, -edge, x_at(lower_idx[0]), x_at(lower_idx[0] + 1));
    const double low2 = detail::refine_crossing(arc, -edge, x_at(lower_idx[1]), x_at(lower_idx[1] + 1));
    double top1 = 0.0, top2 = 0.0;
    if (upper_idx.size() == 2) {
      top1 = detail::refine_crossing(arc, edge, x_at(upper_idx[0]), x_at(upper_idx[0] + 1));
      top2 = detail::refine_crossing(arc, edge, x_at(upper_idx[1]), x_at(upper_idx[1] + 1));
    } else if (upper_idx.size() < 2 && std::abs(apex_clear) <= apex_tol) {
      // tangent apex: the two crossings coincide at the maximum
      top1 = top2 = x_at(apex_j);
    } else {
      rep.failure = "expected two crossings of the right edge, found " +
                    std::to_string(upper_idx.size());
      return rep;
    }
    if (!(low1 < top1 && top1 <= top2 && top2 < low2)) {
      rep.failure = "crossings out of order";
      return rep;
    }
    // Monotone branches between the refined crossings.
    const double mono_tol = 1e-12 * (1.0 + std::abs(mu) + gamma);
    for (int j = 0; j + 1 < points_per_line; ++j) {
      const double xa = x_at(j), xb = x_at(j + 1);
      if (xa >= low1 && xb <= top1 &&
          !(val[static_cast<std::size_t>(j + 1)] >= val[static_cast<std::size_t>(j)] - mono_tol)) {
        rep.failure = "rising branch not monotone";
        return rep;
      }
      if (xa >= top2 && xb <= low2 &&
          !(val[static_cast<std::size_t>(j + 1)] <= val[static_cast<std::size_t>(j)] + mono_tol)) {
        rep.failure = "falling branch not monotone";
        return rep;
      }
    }
    rep.strip_left.lo = std::max(rep.strip_left.lo, low1);
    rep.strip_left.hi = std::min(rep.strip_left.hi, top1);
    rep.strip_right.lo = std::max(rep.strip_right.lo, top2);
    rep.strip_right.hi = std::min(rep.strip_right.hi, low2);
    ++rep.lines_checked;
  }

  if (!(rep.strip_left.lo < rep.strip_left.hi) && gamma > 0.0) {
    rep.failure = "left strips do not intersect across lines";
    return rep;
  }
  if (!(rep.strip_right.lo < rep.strip_right.hi) && gamma > 0.0) {
    rep.failure = "right strips do not intersect across lines";
    return rep;
  }
  rep.strip_gap = rep.strip_right.lo - rep.strip_left.hi;
  if (gamma > 0.0 && !(rep.strip_gap > 0.0)) {
    rep.failure = "strips are not disjoint";
    return rep;
  }
  rep.covering_verified = true;
  return rep;
}

}  // namespace henon
