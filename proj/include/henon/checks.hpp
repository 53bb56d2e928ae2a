#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "henon/map.hpp"
#include "henon/random.hpp"
#include "henon/trapping.hpp"

namespace henon {

struct CheckReport {
  std::string check;
  bool pass = false;
  std::size_t samples = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::optional<State> counterexample;
};

/// Uniform draw from the open l1 ball of the given radius: exponential
/// spacings give a uniform direction on the simplex, U^{1/n} the radius.
inline std::vector<double> sample_l1_ball(UniformRng& rng, int n, double radius) {
  std::vector<double> y(static_cast<std::size_t>(n), 0.0);
  if (radius <= 0.0) return y;
  double total = 0.0;
  for (auto& v : y) {
    v = -std::log1p(-rng.unit());
    total += v;
  }
  if (total <= 0.0) return y;
  const double r = radius * std::pow(rng.unit(), 1.0 / n);
  for (auto& v : y) v = rng.sign() * r * (v / total);
  return y;
}

namespace detail {
// Equality is a pass only in the collapsed gamma = 0 case, where every image
// lands exactly on the boundary value 0.
inline bool margin_pass(double worst, double gamma) {
  return gamma == 0.0 ? worst >= 0.0 : worst > 0.0;
}
}  // namespace detail

/// Samples the box uniformly, applies one step, and checks the image y stays
/// strictly inside the gamma-ball.
inline CheckReport y_ball_check(const MapParams& p, const TrappingDomain& d,
                                std::size_t samples, std::uint64_t rng_seed) {
  if (samples < 1) throw std::invalid_argument("y_ball_check: samples >= 1");
  UniformRng rng(rng_seed);
  CheckReport rep;
  rep.check = "y-ball contraction";
  rep.samples = samples;
  State worst_seed;
  for (std::size_t i = 0; i < samples; ++i) {
    State s{rng.range(d.alpha_minus, d.alpha_plus), sample_l1_ball(rng, p.n(), d.gamma)};
    const State img = step(p, s);
    const double margin = d.gamma - img.y_norm();
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      worst_seed = s;
    }
  }
  rep.pass = detail::margin_pass(rep.worst_margin, d.gamma);
  if (!rep.pass) rep.counterexample = worst_seed;
  return rep;
}

/// Samples the box and checks each image obeys the scalar envelope
/// f(x) - gamma < x_next < f(x) + gamma together with the y-ball bound.
inline CheckReport sandwich_check(const MapParams& p, const TrappingDomain& d,
                                  std::size_t samples, std::uint64_t rng_seed) {
  if (samples < 1) throw std::invalid_argument("sandwich_check: samples >= 1");
  UniformRng rng(rng_seed);
  CheckReport rep;
  rep.check = "envelope sandwich";
  rep.samples = samples;
  State worst_seed;
  for (std::size_t i = 0; i < samples; ++i) {
    State s{rng.range(d.alpha_minus, d.alpha_plus), sample_l1_ball(rng, p.n(), d.gamma)};
    const State img = step(p, s);
    const double fx = p.f()(s.x);
    const double margin =
        std::min({img.x - (fx - d.gamma), (fx + d.gamma) - img.x, d.gamma - img.y_norm()});
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      worst_seed = s;
    }
  }
  rep.pass = detail::margin_pass(rep.worst_margin, d.gamma);
  if (!rep.pass) rep.counterexample = worst_seed;
  return rep;
}

struct OracleReport {
  bool pass = false;
  std::size_t seeds = 0;
  std::size_t iterations = 0;
  std::size_t escaped = 0;
  double worst_x_margin = std::numeric_limits<double>::infinity();
  double worst_y_margin = std::numeric_limits<double>::infinity();
  std::optional<State> counterexample;
};

namespace detail {

inline constexpr double kOracleEscapeCutoff = 1e8;

struct OrbitStats {
  double min_x = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_ynorm = 0.0;
  bool escaped = false;
};

template <int N, class F>
inline OrbitStats scan_orbit(const F& f, double b, const double* a, double x,
                             const double* y0, int iterations) {
  double y[N];
  for (int i = 0; i < N; ++i) y[i] = y0[i];
  OrbitStats st;
  st.min_x = st.max_x = x;
  for (int t = 0; t < iterations; ++t) {
    double sum = y[0];
    for (int i = 1; i < N; ++i) sum += y[i];
    const double xn = f(x) + sum;
    for (int i = N - 1; i >= 1; --i) y[i] = a[i - 1] * y[i - 1];
    y[0] = b * x;
    x = xn;
    double ynorm = std::abs(y[0]);
    for (int i = 1; i < N; ++i) ynorm += std::abs(y[i]);
    st.min_x = std::min(st.min_x, x);
    st.max_x = std::max(st.max_x, x);
    st.max_ynorm = std::max(st.max_ynorm, ynorm);
    if (!(std::abs(x) < kOracleEscapeCutoff)) {
      st.escaped = true;
      break;
    }
  }
  return st;
}

template <class F>
inline OrbitStats scan_orbit_dyn(const F& f, double b, const double* a, int n,
                                 double x, const double* y0, int iterations) {
  std::vector<double> y(y0, y0 + n);
  OrbitStats st;
  st.min_x = st.max_x = x;
  for (int t = 0; t < iterations; ++t) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += y[static_cast<std::size_t>(i)];
    const double xn = f(x) + sum;
    for (int i = n - 1; i >= 1; --i)
      y[static_cast<std::size_t>(i)] = a[i - 1] * y[static_cast<std::size_t>(i - 1)];
    y[0] = b * x;
    x = xn;
    double ynorm = 0.0;
    for (int i = 0; i < n; ++i) ynorm += std::abs(y[static_cast<std::size_t>(i)]);
    st.min_x = std::min(st.min_x, x);
    st.max_x = std::max(st.max_x, x);
    st.max_ynorm = std::max(st.max_ynorm, ynorm);
    if (!(std::abs(x) < kOracleEscapeCutoff)) {
      st.escaped = true;
      break;
    }
  }
  return st;
}

template <class F>
inline OrbitStats scan_orbit_any(const F& f, double b, const double* a, int n,
                                 double x, const double* y0, int iterations) {
  switch (n) {
    case 1: return scan_orbit<1>(f, b, a, x, y0, iterations);
    case 2: return scan_orbit<2>(f, b, a, x, y0, iterations);
    case 3: return scan_orbit<3>(f, b, a, x, y0, iterations);
    case 4: return scan_orbit<4>(f, b, a, x, y0, iterations);
    default: return scan_orbit_dyn(f, b, a, n, x, y0, iterations);
  }
}

struct QuadraticF {
  double mu;
  double operator()(double x) const { return mu - x * x; }
};

struct CubicF {
  double mu;
  double operator()(double x) const { return (x * x - mu) * x; }
};

struct PolyF {
  const double* c;
  int deg;
  double operator()(double x) const {
    double v = c[deg];
    for (int i = deg - 1; i >= 0; --i) v = v * x + c[i];
    return v;
  }
};

/// Deterministic seed set on and inside the l1 sphere: the zero vector, the
/// axis extremes, then seeded pseudo-random directions; three quarters of the
/// points sit just inside the boundary where escapes would start.
inline std::vector<std::vector<double>> oracle_y_seeds(int n, double gamma, int count) {
  std::vector<std::vector<double>> out;
  if (gamma <= 0.0) {
    out.emplace_back(static_cast<std::size_t>(n), 0.0);
    return out;
  }
  const double outer = gamma * (1.0 - 1e-9);
  out.emplace_back(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n && static_cast<int>(out.size()) < count; ++i) {
    for (double s : {outer, -outer}) {
      std::vector<double> y(static_cast<std::size_t>(n), 0.0);
      y[static_cast<std::size_t>(i)] = s;
      out.push_back(std::move(y));
      if (static_cast<int>(out.size()) >= count) break;
    }
  }
  UniformRng rng(mix_seed(0x6f7261636c65ull, static_cast<std::uint64_t>(n)));
  while (static_cast<int>(out.size()) < count) {
    std::vector<double> w(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& v : w) {
      v = -std::log1p(-rng.unit());
      total += v;
    }
    if (total <= 0.0) continue;
    // every 4th point on a mid shell, the rest hugging the boundary
    const double r = (out.size() % 4 == 3) ? 0.5 * gamma : outer;
    for (auto& v : w) v = rng.sign() * r * (v / total);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace detail

/// Iterates a deterministic boundary-heavy grid of seeds covering the box and
/// records the worst excursions. Pass means no orbit ever left the closed box.
inline OracleReport brute_force_trap_oracle(const MapParams& p, const TrappingDomain& d,
                                            int grid_density, int iterations) {
  if (grid_density < 2) throw std::invalid_argument("brute_force_trap_oracle: grid_density >= 2");
  if (iterations < 1) throw std::invalid_argument("brute_force_trap_oracle: iterations >= 1");

  const int n = p.n();
  const auto ys = detail::oracle_y_seeds(n, d.gamma, grid_density);
  const int nx = d.gamma > 0.0 ? grid_density
                               : grid_density * grid_density / std::max<int>(1, static_cast<int>(ys.size()));
  std::vector<double> xs(static_cast<std::size_t>(nx));
  const double mid = 0.5 * (d.alpha_minus + d.alpha_plus);
  const double half = 0.5 * d.width() * (1.0 - 1e-9);
  for (int i = 0; i < nx; ++i) {
    const double t = nx == 1 ? 0.5 : static_cast<double>(i) / (nx - 1);
    xs[static_cast<std::size_t>(i)] = mid + (t - 0.5) * 2.0 * half;
  }

  OracleReport rep;
  rep.iterations = static_cast<std::size_t>(iterations);
  rep.seeds = xs.size() * ys.size();

  double worst_key = std::numeric_limits<double>::infinity();
  auto absorb = [&](const detail::OrbitStats& st, double x0, const std::vector<double>& y0) {
    const double xm = std::min(st.min_x - d.alpha_minus, d.alpha_plus - st.max_x);
    const double ym = d.gamma - st.max_ynorm;
    rep.worst_x_margin = std::min(rep.worst_x_margin, xm);
    rep.worst_y_margin = std::min(rep.worst_y_margin, ym);
    if (st.escaped) ++rep.escaped;
    const double key = st.escaped ? -std::numeric_limits<double>::infinity() : std::min(xm, ym);
    if (key < worst_key) {
      worst_key = key;
      if (key < 0.0) rep.counterexample = State{x0, y0};
    }
  };

  const double* a = p.a().empty() ? nullptr : p.a().data();
  auto run_all = [&](const auto& f) {
    for (double x0 : xs)
      for (const auto& y0 : ys)
        absorb(detail::scan_orbit_any(f, p.b(), a, n, x0, y0.data(), iterations), x0, y0);
  };

  switch (p.f().kind()) {
    case NonlinearityKind::Quadratic:
      run_all(detail::QuadraticF{p.f().mu()});
      break;
    case NonlinearityKind::Cubic:
      run_all(detail::CubicF{p.f().mu()});
      break;
    default: {
      const Polynomial poly = p.f().as_polynomial();
      run_all(detail::PolyF{poly.coeffs().data(), poly.degree()});
      break;
    }
  }

  // The closed-form boxes are exactly tight (sup f + gamma = alpha), so
  // orbits on superstable boundary cycles settle within an ulp of the stored
  // edge and the sign of a zero margin is rounding noise. Tolerate only
  // representation error; any dynamical excursion is orders larger.
  const double float_slack = 4.0 * std::numeric_limits<double>::epsilon() *
                             (1.0 + d.alpha() + d.gamma);
  rep.pass = rep.escaped == 0 && rep.worst_x_margin >= -float_slack &&
             rep.worst_y_margin >= -float_slack;
  return rep;
}

}  // namespace henon
