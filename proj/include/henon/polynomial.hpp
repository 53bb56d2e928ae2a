#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace henon {

/// Dense univariate polynomial over double. Coefficients are stored lowest
/// degree first: coeffs()[k] multiplies x^k.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}

  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    trim();
  }

  static Polynomial monomial(int degree, double c = 1.0) {
    std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
    v.back() = c;
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  std::complex<double> operator()(std::complex<double> x) const {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() == 1) return Polynomial();
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return Polynomial(std::move(d));
  }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<double> r(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) r[k] += coeffs_[k];
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) r[k] += o.coeffs_[k];
    return Polynomial(std::move(r));
  }

  Polynomial operator-(const Polynomial& o) const {
    std::vector<double> r(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) r[k] += coeffs_[k];
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) r[k] -= o.coeffs_[k];
    return Polynomial(std::move(r));
  }

  Polynomial operator*(const Polynomial& o) const {
    std::vector<double> r(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
        r[i + j] += coeffs_[i] * o.coeffs_[j];
    return Polynomial(std::move(r));
  }

  Polynomial operator*(double c) const {
    std::vector<double> r = coeffs_;
    for (double& v : r) v *= c;
    return Polynomial(std::move(r));
  }

  /// Multiply by x^k (shift coefficients up).
  Polynomial shifted_up(int k) const {
    if (is_zero()) return Polynomial();
    std::vector<double> r(coeffs_.size() + static_cast<std::size_t>(k), 0.0);
    std::copy(coeffs_.begin(), coeffs_.end(), r.begin() + k);
    return Polynomial(std::move(r));
  }

 private:
  void trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  }

  std::vector<double> coeffs_;
};

/// Root of f in [lo, hi] assuming f(lo) and f(hi) have opposite signs.
/// Bisection to absolute x-tolerance `tol`.
template <typename Fn>
double bisect_root(Fn&& f, double lo, double hi, double flo, double fhi,
                   double tol = 1e-13) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisect_root: no sign change on interval");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating resolution
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// All sign-change roots of a scalar function on [lo, hi], located on a
/// uniform grid of `subdivisions` cells and refined by bisection. Roots of
/// even multiplicity (no sign change) are not detected.
template <typename Fn>
std::vector<double> grid_roots(Fn&& f, double lo, double hi,
                               std::size_t subdivisions, double tol = 1e-13) {
  std::vector<double> roots;
  if (!(hi > lo) || subdivisions < 1) return roots;
  const double h = (hi - lo) / static_cast<double>(subdivisions);
  double x0 = lo;
  double f0 = f(x0);
  for (std::size_t i = 1; i <= subdivisions; ++i) {
    const double x1 = (i == subdivisions) ? hi : lo + h * static_cast<double>(i);
    const double f1 = f(x1);
    if (f0 == 0.0) {
      if (roots.empty() || std::abs(roots.back() - x0) > tol) roots.push_back(x0);
    } else if (f1 != 0.0 && (f0 > 0.0) != (f1 > 0.0)) {
      roots.push_back(bisect_root(f, x0, x1, f0, f1, tol));
    }
    x0 = x1;
    f0 = f1;
  }
  if (f0 == 0.0) roots.push_back(hi);
  return roots;
}

}  // namespace henon
