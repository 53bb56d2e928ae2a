#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "henon/polynomial.hpp"

namespace henon {

enum class NonlinearityKind { Quadratic, Cubic, Polynomial };

/// Scalar nonlinearity f driving the x-coordinate of the map.
///
/// Quadratic:  f(x) = mu - x^2
/// Cubic:      f(x) = x^3 - mu*x
/// Polynomial: f(x) = sum_k c_k x^k (coefficients lowest degree first)
///
/// Quadratic(mu) and Cubic(mu) are exactly representable as Polynomial and
/// round-trip through as_polynomial().
class Nonlinearity {
 public:
  static Nonlinearity quadratic(double mu) {
    return Nonlinearity(NonlinearityKind::Quadratic, mu, Polynomial({mu, 0.0, -1.0}));
  }

  static Nonlinearity cubic(double mu) {
    return Nonlinearity(NonlinearityKind::Cubic, mu, Polynomial({0.0, -mu, 0.0, 1.0}));
  }

  static Nonlinearity polynomial(std::vector<double> coeffs) {
    Polynomial p(std::move(coeffs));
    return Nonlinearity(NonlinearityKind::Polynomial, 0.0, std::move(p));
  }

  NonlinearityKind kind() const { return kind_; }

  /// Map parameter mu; only meaningful for Quadratic and Cubic.
  double mu() const {
    if (kind_ == NonlinearityKind::Polynomial)
      throw std::logic_error("Nonlinearity: mu undefined for general polynomial");
    return mu_;
  }

  double operator()(double x) const {
    switch (kind_) {
      case NonlinearityKind::Quadratic: return mu_ - x * x;
      case NonlinearityKind::Cubic: return x * x * x - mu_ * x;
      case NonlinearityKind::Polynomial: return poly_(x);
    }
    return 0.0;  // unreachable
  }

  /// Analytic derivative f'(x).
  double derivative(double x) const {
    switch (kind_) {
      case NonlinearityKind::Quadratic: return -2.0 * x;
      case NonlinearityKind::Cubic: return 3.0 * x * x - mu_;
      case NonlinearityKind::Polynomial: return poly_.derivative()(x);
    }
    return 0.0;  // unreachable
  }

  const Polynomial& as_polynomial() const { return poly_; }
  Polynomial derivative_polynomial() const { return poly_.derivative(); }

 private:
  Nonlinearity(NonlinearityKind kind, double mu, Polynomial poly)
      : kind_(kind), mu_(mu), poly_(std::move(poly)) {}

  NonlinearityKind kind_;
  double mu_;
  Polynomial poly_;
};

inline double evaluate_f(const Nonlinearity& f, double x) { return f(x); }

}  // namespace henon
