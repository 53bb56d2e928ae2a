#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "henon/map.hpp"
#include "henon/nonlinearity.hpp"
#include "henon/roots.hpp"

namespace henon {

/// Slack for the non-strict certificate inequalities. The closed-form boxes
/// are exactly tight (sup f + gamma lands on alpha to the last bit), so
/// equality must certify despite rounding.
inline constexpr double kCertSlack = 1e-12;

enum class CertificateKind {
  QuadraticClosedForm,
  CubicClosedForm,
  IntervalSandwich,
  OracleOnly,
};

inline const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::QuadraticClosedForm: return "quadratic-closed-form";
    case CertificateKind::CubicClosedForm: return "cubic-closed-form";
    case CertificateKind::IntervalSandwich: return "interval-sandwich";
    case CertificateKind::OracleOnly: return "oracle-only";
  }
  return "unknown";
}

/// Candidate trapping box (alpha_minus, alpha_plus) x { ||y||_1 <= gamma }.
/// gamma is 0 exactly when b = 0 (y-subsystem collapses).
struct TrappingDomain {
  double alpha_minus = 0.0;
  double alpha_plus = 0.0;
  double gamma = 0.0;
  CertificateKind certified_by = CertificateKind::OracleOnly;

  double alpha() const { return std::max(std::abs(alpha_minus), std::abs(alpha_plus)); }
  double width() const { return alpha_plus - alpha_minus; }
  bool contains(double x, double y_norm) const {
    return alpha_minus <= x && x <= alpha_plus && y_norm <= gamma;
  }
};

/// l1 radius the y-subsystem contracts into when |x| stays below alpha:
/// ||y_next||_1 <= |b| alpha + a_bound ||y||_1, fixed point alpha|b|/(1 - a_bound).
inline double gamma_bound(const MapParams& p, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("gamma_bound: alpha > 0 required");
  return alpha * std::abs(p.b()) / (1.0 - p.a_bound());
}

/// Scalar envelope maps f(x) +- gamma bracketing the true x-update for any
/// y in the gamma-ball.
struct AuxMaps {
  Nonlinearity f;
  double gamma = 0.0;

  double upper(double x) const { return f(x) + gamma; }
  double lower(double x) const { return f(x) - gamma; }
};

inline AuxMaps aux_maps(Nonlinearity f, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("aux_maps: gamma >= 0 required");
  return AuxMaps{std::move(f), gamma};
}

struct ExtremeValues {
  double f_inf = 0.0;
  double f_sup = 0.0;
  double argmin = 0.0;
  double argmax = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Exact range of a polynomial nonlinearity over a closed interval:
/// evaluate at interior critical points and endpoints.
inline ExtremeValues extreme_values(const Nonlinearity& f, double lo, double hi) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("extreme_values: need finite lo <= hi");
  std::vector<double> candidates{lo, hi};
  for (double c : real_roots_in_interval(f.derivative_polynomial(), lo, hi))
    candidates.push_back(c);
  ExtremeValues ev;
  ev.lo = lo;
  ev.hi = hi;
  ev.f_inf = std::numeric_limits<double>::infinity();
  ev.f_sup = -std::numeric_limits<double>::infinity();
  for (double x : candidates) {
    const double v = f(x);
    if (v < ev.f_inf) { ev.f_inf = v; ev.argmin = x; }
    if (v > ev.f_sup) { ev.f_sup = v; ev.argmax = x; }
  }
  return ev;
}

namespace detail {
inline double cert_tol(double a, double b, double c, double d) {
  return kCertSlack *
         std::max({1.0, std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}
}  // namespace detail

/// True when (alpha_minus, alpha_plus) x {||y||_1 <= gamma} maps into itself:
/// alpha_minus + gamma <= inf f and sup f <= alpha_plus - gamma on the interval.
inline bool is_trapping_interval(const Nonlinearity& f, double alpha_minus,
                                 double alpha_plus, double gamma) {
  if (!(alpha_minus < alpha_plus)) throw std::invalid_argument("is_trapping_interval: alpha_minus < alpha_plus");
  if (gamma < 0.0) throw std::invalid_argument("is_trapping_interval: gamma >= 0");
  const ExtremeValues ev = extreme_values(f, alpha_minus, alpha_plus);
  const double tol = detail::cert_tol(alpha_minus, alpha_plus, ev.f_inf, ev.f_sup);
  return alpha_minus + gamma <= ev.f_inf + tol && ev.f_sup <= alpha_plus - gamma + tol;
}

/// Upgrade an invariant interval of f to a trapping box: the extremes must
/// clear the endpoints by gamma on both sides. Requires f(I) inside I.
inline std::optional<TrappingDomain> attractor_from_invariant_interval(
    const Nonlinearity& f, double lo, double hi, double gamma) {
  if (!(lo < hi)) throw std::invalid_argument("attractor_from_invariant_interval: lo < hi");
  if (gamma < 0.0) throw std::invalid_argument("attractor_from_invariant_interval: gamma >= 0");
  const ExtremeValues ev = extreme_values(f, lo, hi);
  const double tol = detail::cert_tol(lo, hi, ev.f_inf, ev.f_sup);
  if (!(ev.f_inf >= lo - tol && ev.f_sup <= hi + tol))
    throw std::domain_error("interval not invariant");
  if (ev.f_inf - gamma >= lo - tol && ev.f_sup + gamma <= hi + tol)
    return TrappingDomain{lo, hi, gamma, CertificateKind::IntervalSandwich};
  return std::nullopt;
}

namespace detail {
inline void check_coupling(double b, double a_bound) {
  if (!(std::abs(b) < 1.0)) throw std::invalid_argument("|b| < 1 required");
  if (!(a_bound >= 0.0 && a_bound < 1.0))
    throw std::invalid_argument("a_bound in [0, 1) required");
  if (1.0 - a_bound - std::abs(b) <= 0.0)
    throw std::domain_error("coupling too strong: |b| >= 1 - a_bound");
}
}  // namespace detail

/// Closed-form trapping box for f(x) = mu - x^2. Certifies exactly when
/// 0 < mu < 2 (1 - |b|/(1 - a_bound))^2; then
///   alpha = mu (1 - a_bound) / (1 - a_bound - |b|),
///   gamma = mu |b| / (1 - a_bound - |b|),
/// and the box is (-alpha, alpha) x {||y||_1 <= gamma}.
inline std::optional<TrappingDomain> quadratic_trapping_domain(double mu, double b,
                                                               double a_bound) {
  detail::check_coupling(b, a_bound);
  const double r = 1.0 - std::abs(b) / (1.0 - a_bound);
  if (!(mu > 0.0 && mu < 2.0 * r * r)) return std::nullopt;
  const double denom = 1.0 - a_bound - std::abs(b);
  const double alpha = mu * (1.0 - a_bound) / denom;
  const double gamma = mu * std::abs(b) / denom;
  return TrappingDomain{-alpha, alpha, gamma, CertificateKind::QuadraticClosedForm};
}

/// (mu + gamma)^2 - 2 mu; negative exactly when the box top alpha = mu + gamma
/// pulls back inside the box under the lower envelope map, the stronger
/// condition behind the quadratic certificate.
inline double quadratic_preimage_margin(double mu, double gamma) {
  const double a = mu + gamma;
  return a * a - 2.0 * mu;
}

/// Fixed points of the lower envelope g(x) = mu - x^2 - gamma,
/// x = (-1 -+ sqrt(1 + 4(mu - gamma))) / 2, returned as (left, right).
inline std::pair<double, double> quadratic_aux_fixed_points(double mu, double gamma) {
  const double disc = 1.0 + 4.0 * (mu - gamma);
  if (disc < 0.0) throw std::domain_error("no real fixed points: 1 + 4(mu - gamma) < 0");
  const double s = std::sqrt(disc);
  return {(-1.0 - s) / 2.0, (-1.0 + s) / 2.0};
}

/// Box parameters for f(x) = x^3 - mu x at the largest admissible coupling:
/// alpha = 2 sqrt(mu/3), gamma = 2 (1 - mu/3) sqrt(mu/3).
struct CubicBoundary {
  double alpha = 0.0;
  double gamma = 0.0;
};

inline CubicBoundary cubic_boundary_domain(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("cubic_boundary_domain: mu > 0");
  const double xi = std::sqrt(mu / 3.0);
  return {2.0 * xi, 2.0 * (1.0 - mu / 3.0) * xi};
}

/// Closed-form trapping box for f(x) = x^3 - mu x. Certifies exactly when
/// 0 < mu < 3 and |b| < (1 - a_bound)(3 - mu)/3; then with xi = sqrt(mu/3)
/// and beta = |b|/(1 - a_bound - |b|),
///   gamma = (2 xi mu / 3) beta,   alpha = (2 xi mu / 3)(1 + beta).
inline std::optional<TrappingDomain> cubic_trapping_domain(double mu, double b,
                                                           double a_bound) {
  detail::check_coupling(b, a_bound);
  if (!(mu > 0.0 && mu < 3.0)) return std::nullopt;
  if (!(std::abs(b) < (1.0 - a_bound) * (3.0 - mu) / 3.0)) return std::nullopt;
  const double denom = 1.0 - a_bound - std::abs(b);
  const double xi = std::sqrt(mu / 3.0);
  const double beta = std::abs(b) / denom;
  const double base = 2.0 * xi * mu / 3.0;
  const double gamma = base * beta;
  const double alpha = base * (1.0 + beta);
  // The coupling bound above is algebraically equivalent to mu (1 + beta) < 3,
  // which keeps the rescaled cubic inside the box; recheck it numerically.
  const double growth = mu * (1.0 + beta);
  if (!(growth < 3.0 + 1e-9))
    throw std::logic_error("cubic_trapping_domain: internal invariance check failed");
  return TrappingDomain{-alpha, alpha, gamma, CertificateKind::CubicClosedForm};
}

/// Fixed points of the upper envelope g(x) = x^3 - mu x + gamma: real roots
/// of x^3 - (mu + 1) x + gamma, ascending.
inline std::vector<double> cubic_aux_fixed_points(double mu, double gamma) {
  const Polynomial fixed_eq({gamma, -(mu + 1.0), 0.0, 1.0});
  const double bound = 1.0 + std::max(std::abs(gamma), std::abs(mu + 1.0));
  return real_roots_in_interval(fixed_eq, -bound, bound);
}

/// Coupling strength at which the envelope fixed points of the cubic collide
/// (fold of the certificate geometry):
/// |b| = (1 - a_bound)(1 + mu)^{3/2} / (mu^{3/2} + (1 + mu)^{3/2}).
inline double cubic_saddle_node_curve(double mu, double a_bound) {
  if (!(mu > 0.0)) throw std::invalid_argument("cubic_saddle_node_curve: mu > 0");
  if (!(a_bound >= 0.0 && a_bound < 1.0))
    throw std::invalid_argument("cubic_saddle_node_curve: a_bound in [0, 1)");
  const double hi = std::pow(1.0 + mu, 1.5);
  return (1.0 - a_bound) * hi / (std::pow(mu, 1.5) + hi);
}

}  // namespace henon
