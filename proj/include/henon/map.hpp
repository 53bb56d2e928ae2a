#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "henon/nonlinearity.hpp"

namespace henon {

/// Orbits with |x| or ||y||_1 beyond this are treated as escaped, not as a
/// numeric fault; escape is meaningful data for region scans.
inline constexpr double kEscapeThreshold = 1e100;

/// Manhattan (l1) norm used for every y-bound.
inline double manhattan_norm(std::span<const double> v) {
  double s = 0.0;
  for (double t : v) s += std::abs(t);
  return s;
}

/// Parameters of the (n+1)-dimensional map
///
///   x'      = f(x) + y_1 + ... + y_n
///   y_1'    = b x
///   y_{i+1}' = a_i y_i,   i = 1..n-1
///
/// The constructor enforces |b| < 1 and |a_i| < 1.
class MapParams {
 public:
  MapParams(Nonlinearity f, double b, std::vector<double> a = {})
      : f_(std::move(f)), b_(b), a_(std::move(a)) {
    if (!(std::abs(b_) < 1.0))
      throw std::invalid_argument("MapParams: |b| < 1 required, got b = " + std::to_string(b_));
    for (double ai : a_)
      if (!(std::abs(ai) < 1.0))
        throw std::invalid_argument("MapParams: |a_i| < 1 required, got a_i = " +
                                    std::to_string(ai));
  }

  const Nonlinearity& f() const { return f_; }
  double b() const { return b_; }
  const std::vector<double>& a() const { return a_; }

  /// Dimension of the y-subsystem; the phase space is (n+1)-dimensional.
  int n() const { return static_cast<int>(a_.size()) + 1; }

  /// Tightest shift-coefficient bound: max_i |a_i|, and 0 when n = 1 (no a_i
  /// exist), which reproduces the classic 2-D Henon bounds.
  double a_bound() const {
    double m = 0.0;
    for (double ai : a_) m = std::max(m, std::abs(ai));
    return m;
  }

 private:
  Nonlinearity f_;
  double b_;
  std::vector<double> a_;
};

/// One phase-space point (x, y_1..y_n).
struct State {
  double x = 0.0;
  std::vector<double> y;

  State() = default;
  State(double x_, std::vector<double> y_) : x(x_), y(std::move(y_)) {}

  double y_norm() const { return manhattan_norm(y); }
};

inline bool is_escaped(const State& s) {
  return !(std::abs(s.x) <= kEscapeThreshold) || !(s.y_norm() <= kEscapeThreshold);
}

namespace detail {
inline void require_dimension(const MapParams& p, const State& s) {
  if (static_cast<int>(s.y.size()) != p.n())
    throw std::invalid_argument("State dimension " + std::to_string(s.y.size()) +
                                " does not match map dimension n = " + std::to_string(p.n()));
}
}  // namespace detail

/// In-place step for hot loops: reads (x, y), writes (x, y_next); no
/// allocation. y and y_next must both have length n and must not alias.
inline void step_in_place(const MapParams& p, double& x, const double* y,
                          double* y_next) {
  const int n = p.n();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += y[i];
  const double x_new = p.f()(x) + sum;
  y_next[0] = p.b() * x;
  for (int i = 1; i < n; ++i) y_next[i] = p.a()[static_cast<std::size_t>(i - 1)] * y[i - 1];
  x = x_new;
}

/// One application of the map.
inline State step(const MapParams& p, const State& s) {
  detail::require_dimension(p, s);
  State out;
  out.x = s.x;
  out.y.resize(s.y.size());
  step_in_place(p, out.x, s.y.data(), out.y.data());
  return out;
}

/// Orbit segment [s, T(s), ..., T^k(s)]; element 0 is the seed.
inline std::vector<State> iterate(const MapParams& p, const State& s, std::size_t k) {
  detail::require_dimension(p, s);
  std::vector<State> orbit;
  orbit.reserve(k + 1);
  orbit.push_back(s);
  for (std::size_t i = 0; i < k; ++i) orbit.push_back(step(p, orbit.back()));
  return orbit;
}

/// Endpoint-only variant for long runs.
inline State iterate_endpoint(const MapParams& p, State s, std::size_t k) {
  detail::require_dimension(p, s);
  std::vector<double> scratch(s.y.size());
  for (std::size_t i = 0; i < k; ++i) {
    step_in_place(p, s.x, s.y.data(), scratch.data());
    s.y.swap(scratch);
  }
  return s;
}

/// Jacobian of the map at x (it depends only on the x-coordinate):
/// row 0 is (f'(x), 1, ..., 1); the subdiagonal carries b, a_1, .., a_{n-1}.
inline Eigen::MatrixXd jacobian_at(const MapParams& p, double x) {
  const int n = p.n();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n + 1, n + 1);
  j(0, 0) = p.f().derivative(x);
  for (int c = 1; c <= n; ++c) j(0, c) = 1.0;
  j(1, 0) = p.b();
  for (int i = 1; i < n; ++i) j(i + 1, i) = p.a()[static_cast<std::size_t>(i - 1)];
  return j;
}

/// Apply the Jacobian at x to a tangent vector (v_x, v_y) in place; cheaper
/// than forming the matrix. Used by the Lyapunov diagnostic.
inline void tangent_step_in_place(const MapParams& p, double x, double& vx,
                                  double* vy, double* vy_next) {
  const int n = p.n();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += vy[i];
  const double vx_new = p.f().derivative(x) * vx + sum;
  vy_next[0] = p.b() * vx;
  for (int i = 1; i < n; ++i) vy_next[i] = p.a()[static_cast<std::size_t>(i - 1)] * vy[i - 1];
  vx = vx_new;
}

/// Diagonal change of variables y_i = q_i v_i that conjugates the map to the
/// generalized Henon-like form
///
///   x'      = f(x) + sum_j q_j v_j
///   v_1'    = x
///   v_{i+1}' = v_i
///
/// with q_1 = b and q_{i+1} = a_i q_i.
struct GeneralizedForm {
  std::vector<double> q;

  /// v from y under y_i = q_i v_i.
  std::vector<double> to_v(std::span<const double> y) const {
    std::vector<double> v(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) v[i] = y[i] / q[i];
    return v;
  }

  std::vector<double> to_y(std::span<const double> v) const {
    std::vector<double> y(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) y[i] = q[i] * v[i];
    return y;
  }
};

inline GeneralizedForm to_generalized_form(const MapParams& p) {
  if (p.b() == 0.0)
    throw std::invalid_argument("to_generalized_form: degenerate substitution (b = 0)");
  GeneralizedForm g;
  g.q.resize(static_cast<std::size_t>(p.n()));
  g.q[0] = p.b();
  for (int i = 1; i < p.n(); ++i)
    g.q[static_cast<std::size_t>(i)] = p.a()[static_cast<std::size_t>(i - 1)] * g.q[static_cast<std::size_t>(i - 1)];
  return g;
}

/// One step of the generalized Henon-like form (delayed coordinates).
inline std::pair<double, std::vector<double>> generalized_step(
    const Nonlinearity& f, const GeneralizedForm& g, double x,
    const std::vector<double>& v) {
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) sum += g.q[j] * v[j];
  std::vector<double> v_next(v.size());
  v_next[0] = x;
  for (std::size_t i = 1; i < v.size(); ++i) v_next[i] = v[i - 1];
  return {f(x) + sum, std::move(v_next)};
}

}  // namespace henon
