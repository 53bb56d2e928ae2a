#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "henon/map.hpp"
#include "henon/polynomial.hpp"
#include "henon/roots.hpp"

namespace henon {

enum class CharPolyBuild { ClosedForm, Determinant };

/// Monic characteristic polynomial of the (n+1)x(n+1) Jacobian, coefficients
/// low order first.
struct CharPoly {
  Polynomial q;
  int n = 1;
  CharPolyBuild built_from = CharPolyBuild::ClosedForm;
};

/// Direct coefficient formula:
/// q(s) = s^{n-1}(s^2 - f' s - b) - b (a_1 s^{n-2} + a_1 a_2 s^{n-3} + ... + a_1..a_{n-1}).
inline CharPoly char_poly_closed_form(const MapParams& p, double fx_prime) {
  const int n = p.n();
  std::vector<double> c(static_cast<std::size_t>(n + 2), 0.0);
  c[static_cast<std::size_t>(n + 1)] = 1.0;
  c[static_cast<std::size_t>(n)] = -fx_prime;
  c[static_cast<std::size_t>(n - 1)] = -p.b();
  double lever = p.b();
  for (int j = 1; j <= n - 1; ++j) {
    lever *= p.a()[static_cast<std::size_t>(j - 1)];
    c[static_cast<std::size_t>(n - 1 - j)] = -lever;
  }
  return {Polynomial(std::move(c)), n, CharPolyBuild::ClosedForm};
}

/// Cofactor expansion of det(J - sI) carried out in the polynomial ring:
/// with D_2 = s^2 - f' s - b, each added y-row contributes
/// D_{j+1} = (-1)^j b a_1..a_{j-1} - s D_j; the monic polynomial is
/// (-1)^{n+1} D_{n+1}.
inline CharPoly char_poly_determinant(const MapParams& p, double fx_prime) {
  const int n = p.n();
  if (n + 1 > 64) throw std::length_error("char_poly_determinant: dimension n+1 > 64");
  Polynomial delta({-p.b(), -fx_prime, 1.0});
  double lever = p.b();
  for (int j = 2; j <= n; ++j) {
    lever *= p.a()[static_cast<std::size_t>(j - 2)];
    const double inhom = (j % 2 == 0 ? 1.0 : -1.0) * lever;
    delta = Polynomial({inhom}) - delta.shifted_up(1);
  }
  Polynomial q = ((n + 1) % 2 == 0) ? delta : delta * -1.0;
  return {std::move(q), n, CharPolyBuild::Determinant};
}

/// All n+1 roots with multiplicity, modulus-descending (balanced companion
/// eigensolve with residual-gated Newton polish).
inline std::vector<std::complex<double>> eigenvalues(const CharPoly& cp) {
  return polynomial_roots(cp.q);
}

/// det J = (-1)^n b a_1..a_{n-1}, by cofactor expansion along the first column.
inline double jacobian_determinant(const MapParams& p) {
  double d = p.b();
  for (double ai : p.a()) d *= ai;
  return (p.n() % 2 == 0) ? d : -d;
}

/// Product of f' along the x-coordinates: the multiplier of the collapsed 1-D
/// dynamics, and the surviving nonzero multiplier at b = 0.
inline double multiplier_1d(const Nonlinearity& f, const std::vector<State>& orbit) {
  double m = 1.0;
  for (const State& s : orbit) m *= f.derivative(s.x);
  return m;
}

/// Largest l1 mismatch between step(points[i]) and points[i+1 mod p].
inline double cycle_residual(const MapParams& p, const std::vector<State>& orbit) {
  double worst = 0.0;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    const State img = step(p, orbit[i]);
    const State& next = orbit[(i + 1) % orbit.size()];
    double r = std::abs(img.x - next.x);
    for (std::size_t k = 0; k < img.y.size(); ++k) r += std::abs(img.y[k] - next.y[k]);
    worst = std::max(worst, r);
  }
  return worst;
}

/// Eigenvalues of the Jacobian product around a verified cycle, modulus
/// descending. For b = 0 the spectrum is checked against {m_x, 0 x n} and
/// returned in that exact form.
inline std::vector<std::complex<double>> orbit_multipliers(const MapParams& p,
                                                           const std::vector<State>& orbit) {
  if (orbit.empty()) throw std::invalid_argument("orbit_multipliers: empty orbit");
  const double res = cycle_residual(p, orbit);
  if (!(res < 1e-8))
    throw std::domain_error("not a cycle: residual " + std::to_string(res));
  const int m = p.n() + 1;
  Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(m, m);
  for (const State& s : orbit) prod = jacobian_at(p, s.x) * prod;
  Eigen::EigenSolver<Eigen::MatrixXd> es(prod);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("orbit_multipliers: eigensolver failed");
  std::vector<std::complex<double>> vals(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) vals[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  std::sort(vals.begin(), vals.end(),
            [](const auto& a, const auto& b) { return std::abs(a) > std::abs(b); });

  if (p.b() == 0.0) {
    const double mx = multiplier_1d(p.f(), orbit);
    // A defective zero cluster of size n perturbs like eps^(1/n); gate the
    // consistency check accordingly, then return the exact collapsed form.
    const double scale = 1.0 + prod.cwiseAbs().maxCoeff();
    const double zero_tol =
        std::max(1e-8, 5.0 * std::pow(1e-14 * scale, 1.0 / std::max(1, p.n())));
    if (std::abs(mx) > zero_tol) {
      if (std::abs(vals[0] - std::complex<double>(mx, 0.0)) >
          std::max(1e-8, 1e-8 * std::abs(mx)))
        throw std::logic_error("orbit_multipliers: b=0 spectrum mismatch with f' product");
      for (std::size_t i = 1; i < vals.size(); ++i)
        if (std::abs(vals[i]) > zero_tol)
          throw std::logic_error("orbit_multipliers: b=0 spectrum has nonzero tail");
    }
    vals[0] = {mx, 0.0};
    for (std::size_t i = 1; i < vals.size(); ++i) vals[i] = {0.0, 0.0};
  }
  return vals;
}

}  // namespace henon
