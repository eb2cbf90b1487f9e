#pragma once

#include <vector>

namespace pvac {

/// Truncated Taylor series in x about a fixed point: c_k = f^(k)(x0)/k!.
/// Arithmetic truncates to the shorter operand, so the length always tracks
/// how many derivatives are still exact.
class Jet {
 public:
  Jet() = default;
  explicit Jet(std::vector<double> coeffs) : c_(std::move(coeffs)) {}
  static Jet constant(double value, std::size_t length);

  [[nodiscard]] std::size_t size() const { return c_.size(); }
  [[nodiscard]] bool empty() const { return c_.empty(); }
  [[nodiscard]] double operator[](std::size_t k) const { return c_[k]; }
  [[nodiscard]] const std::vector<double>& coeffs() const { return c_; }
  /// k-th derivative at the expansion point, k! c_k.
  [[nodiscard]] double derivative_value(std::size_t k) const;

  [[nodiscard]] Jet derivative() const;
  [[nodiscard]] Jet exp() const;

  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator*(const Jet& o) const;
  Jet operator*(double s) const;

 private:
  std::vector<double> c_;
};

}  // namespace pvac
