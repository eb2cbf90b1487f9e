#pragma once

#include <string>
#include <vector>

#include "pvac/analytic_function.hpp"
#include "pvac/gas.hpp"

namespace pvac {

/// Initial state (rho0, u0, S0) on the reference interval [0,1].
///
/// The density is carried through its degeneracy weight omega = rho0^(gamma-1),
/// which is the smooth, distance-like object; rho0 itself is recovered as
/// omega^(1/(gamma-1)). kappa is the width of the boundary collar, c_kappa the
/// lower bound on |omega'| inside the collar and on omega outside it.
struct InitialData {
  GasParameters gas;
  AnalyticFunction omega;
  AnalyticFunction u0;
  AnalyticFunction s0;
  double kappa = 0.1;
  double c_kappa = 0.0;
  double s_lower = 0.0;
  double s_upper = 0.0;

  [[nodiscard]] double rho0(double x) const;
};

enum class ProfileFamily { Polynomial, Sine, Custom };

/// Canonical vacuum profiles: omega = A x(1-x), omega = A sin(pi x), or a
/// custom polynomial omega with the given power-basis coefficients.
struct ProfileSpec {
  ProfileFamily family = ProfileFamily::Polynomial;
  double amplitude = 1.0;
  std::vector<double> coefficients;
  double kappa = 0.1;
  AnalyticFunction u0 = AnalyticFunction::zero();
  AnalyticFunction s0 = AnalyticFunction::zero();
};

/// Builds InitialData whose omega is exactly the smooth factor of the profile
/// and measures kappa-collar bounds by sampling. Throws InvalidProfile when
/// omega is not strictly positive inside, does not vanish at the endpoints, or
/// has a vanishing endpoint slope.
InitialData make_vacuum_profile(const ProfileSpec& spec, const GasParameters& gas);

struct VacuumReport {
  double boundary_omega_left = 0.0;
  double boundary_omega_right = 0.0;
  double min_collar_slope = 0.0;
  double max_collar_slope = 0.0;
  double min_interior_omega = 0.0;
  double min_entropy_slope = 0.0;
  double max_entropy_slope = 0.0;
  bool passed = false;
  std::vector<std::string> failures;
};

/// Samples the physical-vacuum conditions; never throws on a failing profile.
VacuumReport validate_physical_vacuum(const InitialData& data, int n_samples = 256);

/// Analytic weight omega and its powers.
class WeightField {
 public:
  explicit WeightField(const InitialData& data) : omega_(data.omega) {}

  [[nodiscard]] double omega(double x) const;
  [[nodiscard]] double omega_prime(double x) const { return omega_.derivative(x, 1); }
  /// omega^p for p >= 0; 0^0 = 1. Negative round-off of omega near the
  /// endpoints is clamped to zero.
  [[nodiscard]] double omega_pow(double x, double p) const;

 private:
  AnalyticFunction omega_;
};

}  // namespace pvac
