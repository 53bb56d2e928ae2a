#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "henon/polynomial.hpp"

namespace henon {

namespace detail {

/// Parlett-Reinsch balancing: scale row/column pairs by powers of two until
/// the 1-norm stops improving. Powers of two keep the scaling exact.
inline void balance_in_place(Eigen::MatrixXd& m) {
  const Eigen::Index dim = m.rows();
  Eigen::MatrixXd off = m;
  off.diagonal().setZero();
  const double gamma = 0.9;  // required relative improvement per sweep
  bool changed = true;
  while (changed) {
    changed = false;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double row_norm = off.row(i).lpNorm<1>();
      const double col_norm = off.col(i).lpNorm<1>();
      if (row_norm == 0.0 || col_norm == 0.0) continue;
      int exponent = 0;
      std::frexp(row_norm / col_norm, &exponent);
      exponent /= 2;
      if (exponent != 0) {
        const double scaled_col = std::ldexp(col_norm, exponent);
        const double scaled_row = std::ldexp(row_norm, -exponent);
        if (scaled_col + scaled_row < gamma * (col_norm + row_norm)) {
          changed = true;
          off.row(i) *= std::ldexp(1.0, -exponent);
          off.col(i) *= std::ldexp(1.0, exponent);
        }
      }
    }
  }
  off.diagonal() = m.diagonal();
  m = off;
}

}  // namespace detail

/// Companion matrix of a monic polynomial given by low-first coefficients
/// (the leading coefficient is normalized away).
inline Eigen::MatrixXd companion_matrix(const Polynomial& p) {
  const int deg = p.degree();
  if (deg < 1) throw std::invalid_argument("companion_matrix: degree < 1");
  const auto& c = p.coeffs();
  const double lead = c.back();
  if (lead == 0.0) throw std::invalid_argument("companion_matrix: zero leading coefficient");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(deg, deg);
  m.diagonal(-1).setOnes();
  for (int k = 0; k < deg; ++k) m(k, deg - 1) = -c[static_cast<std::size_t>(k)] / lead;
  return m;
}

/// All complex roots with multiplicity via the balanced companion matrix,
/// sorted by modulus descending. Roots with residual above `polish_residual`
/// get a few complex Newton steps.
inline std::vector<std::complex<double>> polynomial_roots(
    const Polynomial& p, double polish_residual = 1e-8) {
  const int deg = p.degree();
  if (deg < 1) return {};
  if (deg == 1) {
    const auto& c = p.coeffs();
    return {std::complex<double>(-c[0] / c[1], 0.0)};
  }
  Eigen::MatrixXd m = companion_matrix(p);
  detail::balance_in_place(m);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("polynomial_roots: eigensolver failed");
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(deg));
  for (int k = 0; k < deg; ++k) roots[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);

  const Polynomial dp = p.derivative();
  for (auto& r : roots) {
    if (std::abs(p(r)) <= polish_residual) continue;
    for (int it = 0; it < 8; ++it) {
      const std::complex<double> num = p(r);
      const std::complex<double> den = dp(r);
      if (std::abs(den) == 0.0) break;
      const std::complex<double> next = r - num / den;
      if (std::abs(next - r) <= 1e-15 * (1.0 + std::abs(r))) {
        r = next;
        break;
      }
      r = next;
    }
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return roots;
}

/// Real roots of p inside the closed interval [lo, hi], deduplicated and
/// sorted ascending. Companion roots filtered by imaginary part and polished
/// on the real line.
inline std::vector<double> real_roots_in_interval(const Polynomial& p, double lo,
                                                  double hi) {
  std::vector<double> out;
  if (p.degree() < 1) return out;
  const double scale = [&] {
    double s = 0.0;
    for (double c : p.coeffs()) s = std::max(s, std::abs(c));
    return s;
  }();
  const Polynomial dp = p.derivative();
  for (const auto& r : polynomial_roots(p)) {
    if (std::abs(r.imag()) > 1e-8 * (1.0 + std::abs(r))) continue;
    double x = r.real();
    // Newton polish in real arithmetic.
    for (int it = 0; it < 6; ++it) {
      const double d = dp(x);
      if (d == 0.0) break;
      const double nx = x - p(x) / d;
      if (!std::isfinite(nx)) break;
      if (std::abs(nx - x) <= 1e-15 * (1.0 + std::abs(x))) {
        x = nx;
        break;
      }
      x = nx;
    }
    const double pad = 1e-10 * (1.0 + std::max(std::abs(lo), std::abs(hi)));
    if (x < lo - pad || x > hi + pad) continue;
    x = std::clamp(x, lo, hi);
    if (std::abs(p(x)) > 1e-7 * (1.0 + scale)) continue;
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [&](double a, double b) {
                          return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a));
                        }),
            out.end());
  return out;
}

}  // namespace henon
