#pragma once

namespace pvac {

/// Default cap on the time-derivative order of the gamma < 2 energy.
/// l = 9 corresponds to gamma >= 7/6; larger orders cannot be resolved by
/// the finite-difference time monitors.
inline constexpr int kDefaultEllCap = 9;

/// Polytropic gas p = c_gamma * rho^gamma * exp(S) with every exponent the
/// weighted formulation needs, derived once.
struct GasParameters {
  double gamma = 2.0;
  double mu = 0.0;     // (2 - gamma) / (2 (gamma - 1))
  int ell = 5;         // time-derivative order of the energy functional
  double c_gamma = 1.0;
  int ell_cap = kDefaultEllCap;  // cap in force when the exponents were derived

  /// 1 + 2 mu; equals 1/(gamma - 1), so omega^(1+2mu) = rho0.
  [[nodiscard]] double one_plus_two_mu() const { return 1.0 + 2.0 * mu; }
  /// 2 + 2 mu; equals gamma/(gamma - 1), so omega^(2+2mu) = rho0^gamma.
  [[nodiscard]] double two_plus_two_mu() const { return 2.0 + 2.0 * mu; }
  /// The fixed-order functional applies for 2 <= gamma < 3, the l-order one below 2.
  [[nodiscard]] bool case_one() const { return gamma >= 2.0; }
};

/// Throws OutOfRangeGamma unless 1 < gamma < 3, UnsupportedOrder if the
/// derived l exceeds ell_cap. A cap above the default is honoured with a
/// warning on stderr.
GasParameters derive_exponents(double gamma, int ell_cap = kDefaultEllCap);

}  // namespace pvac
