#include "pvac/analytic_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pvac/errors.hpp"

namespace pvac {

AnalyticFunction::AnalyticFunction(std::vector<double> poly, std::vector<SineMode> sines,
                                   int max_order)
    : poly_(std::move(poly)), sines_(std::move(sines)), max_order_(max_order) {
  if (max_order_ < 0) {
    fail(ErrorCode::InvalidArgument, "max_order must be non-negative");
  }
}

double AnalyticFunction::derivative(double x, int k) const {
  if (k < 0) {
    fail(ErrorCode::InvalidArgument, "negative derivative order");
  }
  if (k > max_order_) {
    fail(ErrorCode::InsufficientSmoothness, "derivative of order " + std::to_string(k) +
                                                " requested, function has " +
                                                std::to_string(max_order_));
  }
  double value = 0.0;
  // Horner on the k-th derivative coefficients i!/(i-k)! c_i.
  for (std::size_t i = poly_.size(); i-- > static_cast<std::size_t>(k);) {
    double falling = 1.0;
    for (int m = 0; m < k; ++m) {
      falling *= static_cast<double>(i - static_cast<std::size_t>(m));
    }
    value = value * x + falling * poly_[i];
  }
  for (const auto& mode : sines_) {
    const double w = mode.frequency * std::numbers::pi;
    value += mode.amplitude * std::pow(w, k) *
             std::sin(w * x + mode.phase + 0.5 * std::numbers::pi * k);
  }
  return value;
}

std::vector<double> AnalyticFunction::taylor(double x, int order) const {
  const int n = std::min(order, max_order_);
  std::vector<double> coeffs(static_cast<std::size_t>(n + 1), 0.0);
  double factorial = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      factorial *= k;
    }
    coeffs[static_cast<std::size_t>(k)] = derivative(x, k) / factorial;
  }
  return coeffs;
}

AnalyticFunction AnalyticFunction::operator+(const AnalyticFunction& other) const {
  std::vector<double> poly(std::max(poly_.size(), other.poly_.size()), 0.0);
  for (std::size_t i = 0; i < poly_.size(); ++i) poly[i] += poly_[i];
  for (std::size_t i = 0; i < other.poly_.size(); ++i) poly[i] += other.poly_[i];
  std::vector<SineMode> sines = sines_;
  sines.insert(sines.end(), other.sines_.begin(), other.sines_.end());
  return AnalyticFunction(std::move(poly), std::move(sines), std::min(max_order_, other.max_order_));
}

AnalyticFunction AnalyticFunction::scaled(double factor) const {
  AnalyticFunction out = *this;
  for (auto& c : out.poly_) c *= factor;
  for (auto& m : out.sines_) m.amplitude *= factor;
  return out;
}

}  // namespace pvac
