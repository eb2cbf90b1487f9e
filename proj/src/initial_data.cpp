#include "pvac/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pvac/errors.hpp"

namespace pvac {

namespace {

constexpr double kBoundaryTol = 1e-12;
constexpr double kSlopeFloor = 1e-8;
constexpr int kProfileSamples = 1024;

struct CollarBounds {
  double min_slope = std::numeric_limits<double>::infinity();
  double max_slope = 0.0;
  double min_interior = std::numeric_limits<double>::infinity();
};

CollarBounds sample_collar(const AnalyticFunction& omega, double kappa, int n) {
  CollarBounds b;
  for (int i = 0; i <= n; ++i) {
    const double s = kappa * static_cast<double>(i) / n;
    for (double x : {s, 1.0 - s}) {
      const double slope = std::abs(omega.derivative(x, 1));
      b.min_slope = std::min(b.min_slope, slope);
      b.max_slope = std::max(b.max_slope, slope);
    }
    const double y = kappa + (1.0 - 2.0 * kappa) * static_cast<double>(i) / n;
    b.min_interior = std::min(b.min_interior, omega(y));
  }
  return b;
}

std::pair<double, double> entropy_slope_range(const AnalyticFunction& s0, int n) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i <= n; ++i) {
    const double d = s0.derivative(static_cast<double>(i) / n, 1);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo, hi};
}

}  // namespace

double InitialData::rho0(double x) const {
  const double w = omega(x);
  return w <= 0.0 ? 0.0 : std::pow(w, gas.one_plus_two_mu());
}

InitialData make_vacuum_profile(const ProfileSpec& spec, const GasParameters& gas) {
  if (!(spec.kappa > 0.0 && spec.kappa < 0.5)) {
    fail(ErrorCode::InvalidProfile, "kappa must lie in (0, 1/2)");
  }
  InitialData data;
  data.gas = gas;
  data.u0 = spec.u0;
  data.s0 = spec.s0;
  data.kappa = spec.kappa;
  switch (spec.family) {
    case ProfileFamily::Polynomial:
      data.omega = AnalyticFunction::polynomial({0.0, spec.amplitude, -spec.amplitude});
      break;
    case ProfileFamily::Sine:
      data.omega = AnalyticFunction::sine(spec.amplitude);
      break;
    case ProfileFamily::Custom:
      if (spec.coefficients.empty()) {
        fail(ErrorCode::InvalidProfile, "custom profile needs coefficients");
      }
      data.omega = AnalyticFunction::polynomial(spec.coefficients);
      break;
  }

  const auto& w = data.omega;
  if (std::abs(w(0.0)) > kBoundaryTol || std::abs(w(1.0)) > kBoundaryTol) {
    fail(ErrorCode::InvalidProfile, "density does not vanish at the boundary");
  }
  if (std::abs(w.derivative(0.0, 1)) < kSlopeFloor || std::abs(w.derivative(1.0, 1)) < kSlopeFloor) {
    fail(ErrorCode::InvalidProfile, "omega' vanishes at a boundary point");
  }
  for (int i = 1; i < kProfileSamples; ++i) {
    if (!(w(static_cast<double>(i) / kProfileSamples) > 0.0)) {
      fail(ErrorCode::InvalidProfile, "density is not strictly positive inside (0,1)");
    }
  }

  const auto bounds = sample_collar(w, data.kappa, kProfileSamples);
  data.c_kappa = std::min(bounds.min_slope, bounds.min_interior);
  const auto [lo, hi] = entropy_slope_range(data.s0, kProfileSamples);
  data.s_lower = lo;
  data.s_upper = hi;
  return data;
}

VacuumReport validate_physical_vacuum(const InitialData& data, int n_samples) {
  if (n_samples < 16) {
    fail(ErrorCode::InvalidArgument, "validate_physical_vacuum needs n_samples >= 16");
  }
  VacuumReport r;
  const auto& w = data.omega;
  r.boundary_omega_left = w(0.0);
  r.boundary_omega_right = w(1.0);
  const auto bounds = sample_collar(w, data.kappa, n_samples);
  r.min_collar_slope = bounds.min_slope;
  r.max_collar_slope = bounds.max_slope;
  r.min_interior_omega = bounds.min_interior;
  std::tie(r.min_entropy_slope, r.max_entropy_slope) = entropy_slope_range(data.s0, n_samples);

  auto flag = [&r](const std::string& msg) { r.failures.push_back(msg); };
  if (std::abs(r.boundary_omega_left) > kBoundaryTol ||
      std::abs(r.boundary_omega_right) > kBoundaryTol) {
    flag("no vacuum at the boundary: omega(0), omega(1) must vanish");
  }
  if (!(r.min_collar_slope > kSlopeFloor)) {
    flag("|omega'| degenerates inside the kappa-collar");
  }
  if (!std::isfinite(r.max_collar_slope)) {
    flag("|omega'| unbounded inside the kappa-collar");
  }
  if (data.c_kappa > 0.0 && r.min_collar_slope < data.c_kappa * (1.0 - 1e-12)) {
    flag("collar slope below C_kappa");
  }
  if (!(r.min_interior_omega > 0.0) ||
      (data.c_kappa > 0.0 && r.min_interior_omega < data.c_kappa * (1.0 - 1e-12))) {
    flag("omega below C_kappa away from the boundary");
  }
  const double s_tol = 1e-12 * std::max(1.0, std::abs(data.s_upper));
  if (r.min_entropy_slope < data.s_lower - s_tol || r.max_entropy_slope > data.s_upper + s_tol) {
    flag("S0' outside [s_lower, s_upper]");
  }
  r.passed = r.failures.empty();
  return r;
}

double WeightField::omega(double x) const { return std::max(0.0, omega_(x)); }

double WeightField::omega_pow(double x, double p) const {
  if (p < 0.0) {
    fail(ErrorCode::NegativeExponent, "omega^p requires p >= 0");
  }
  if (p == 0.0) {
    return 1.0;
  }
  const double w = omega(x);
  return w == 0.0 ? 0.0 : std::pow(w, p);
}

}  // namespace pvac
