#pragma once

#include <limits>
#include <vector>

namespace pvac {

/// One term amplitude * sin(frequency * pi * x + phase).
struct SineMode {
  double amplitude = 1.0;
  double frequency = 1.0;
  double phase = 0.0;
};

/// Analytic scalar function on [0,1]: a power-basis polynomial plus a sum of
/// sine modes. Every derivative is exact; `max_order` caps how many the
/// function claims to have, so callers can model data of limited smoothness.
class AnalyticFunction {
 public:
  static constexpr int kUnlimited = 64;

  AnalyticFunction() = default;
  AnalyticFunction(std::vector<double> poly, std::vector<SineMode> sines,
                   int max_order = kUnlimited);

  static AnalyticFunction zero() { return {}; }
  static AnalyticFunction constant(double c) { return AnalyticFunction({c}, {}); }
  static AnalyticFunction polynomial(std::vector<double> coeffs) {
    return AnalyticFunction(std::move(coeffs), {});
  }
  static AnalyticFunction sine(double amplitude, double frequency = 1.0, double phase = 0.0) {
    return AnalyticFunction({}, {SineMode{amplitude, frequency, phase}});
  }

  [[nodiscard]] double operator()(double x) const { return derivative(x, 0); }
  /// k-th derivative; throws InsufficientSmoothness when k > max_order().
  [[nodiscard]] double derivative(double x, int k) const;
  /// Normalized Taylor coefficients f^(k)(x)/k!, k = 0..min(order, max_order()).
  [[nodiscard]] std::vector<double> taylor(double x, int order) const;

  [[nodiscard]] int max_order() const { return max_order_; }
  [[nodiscard]] const std::vector<double>& poly() const { return poly_; }
  [[nodiscard]] const std::vector<SineMode>& sines() const { return sines_; }

  AnalyticFunction operator+(const AnalyticFunction& other) const;
  AnalyticFunction scaled(double factor) const;

 private:
  std::vector<double> poly_;
  std::vector<SineMode> sines_;
  int max_order_ = kUnlimited;
};

}  // namespace pvac
