#include "pvac/jet.hpp"

#include <algorithm>
#include <cmath>

namespace pvac {

Jet Jet::constant(double value, std::size_t length) {
  std::vector<double> c(length, 0.0);
  if (length > 0) {
    c[0] = value;
  }
  return Jet(std::move(c));
}

double Jet::derivative_value(std::size_t k) const {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) {
    f *= static_cast<double>(i);
  }
  return f * c_[k];
}

Jet Jet::derivative() const {
  if (c_.size() <= 1) {
    return Jet();
  }
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 0; k < d.size(); ++k) {
    d[k] = static_cast<double>(k + 1) * c_[k + 1];
  }
  return Jet(std::move(d));
}

Jet Jet::exp() const {
  // e = exp(a): e' = a' e  =>  k e_k = sum_{j=1}^k j a_j e_{k-j}.
  std::vector<double> e(c_.size(), 0.0);
  if (e.empty()) {
    return Jet();
  }
  e[0] = std::exp(c_[0]);
  for (std::size_t k = 1; k < e.size(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      acc += static_cast<double>(j) * c_[j] * e[k - j];
    }
    e[k] = acc / static_cast<double>(k);
  }
  return Jet(std::move(e));
}

Jet Jet::operator+(const Jet& o) const {
  std::vector<double> r(std::min(size(), o.size()));
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = c_[k] + o.c_[k];
  return Jet(std::move(r));
}

Jet Jet::operator-(const Jet& o) const {
  std::vector<double> r(std::min(size(), o.size()));
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = c_[k] - o.c_[k];
  return Jet(std::move(r));
}

Jet Jet::operator*(const Jet& o) const {
  std::vector<double> r(std::min(size(), o.size()), 0.0);
  for (std::size_t k = 0; k < r.size(); ++k) {
    for (std::size_t j = 0; j <= k; ++j) {
      r[k] += c_[j] * o.c_[k - j];
    }
  }
  return Jet(std::move(r));
}

Jet Jet::operator*(double s) const {
  std::vector<double> r = c_;
  for (auto& x : r) x *= s;
  return Jet(std::move(r));
}

}  // namespace pvac
