#pragma once

#include "sievelab/numerics.hpp"

namespace sievelab::sieve {

/// Sifting limits beta_kappa for the dimensions that are tabulated, and the
/// linear-sieve alpha_1.
struct SieveConstants {
  static constexpr double kAlphaLinear = 2.0;
  static constexpr double kBetaLinear = 2.0;
  static constexpr double kBetaQuadratic = 4.266450;

  static bool has_beta(double kappa);
  /// Throws DomainError for an untabulated kappa.
  static double beta(double kappa);
};

/// 2 e^gamma.
inline const double kTwoExpGamma = 2.0 * 1.78107241799019798523650410310717954916964521430343;

/// G(x) = integral_2^x log(t-1)/t dt; zero for x <= 2.
double log_kernel_integral(double x, const numerics::QuadratureSpec& spec = {});

/// K(t, x) = integral_{t+2}^x log((u-1)/(t+1))/u du; zero for x <= t+2.
double cross_kernel_integral(double t, double x, const numerics::QuadratureSpec& spec = {});

/// Upper linear-sieve function F(s) for 0 < s <= 7.
///
/// Pieces: 2e^g/s below 3; F_2 on [3,5); F_3 on [5,7]. A breakpoint belongs
/// to the piece on its right.
double F_lin(double s, const numerics::QuadratureSpec& spec = {});

/// Lower linear-sieve function f(s) for 0 < s <= 8; zero on (0, 2].
double f_lin(double s, const numerics::QuadratureSpec& spec = {});

/// Upper bound (k+z) log(beta_k/z) - k + z k/beta_k for the weighted-sieve
/// integral in dimension k. Accepts 0 < zeta <= beta_k; only k = 2 is
/// tabulated (k = 1 has the trivial closed forms above).
double hr_upper(double kappa, double zeta);

}  // namespace sievelab::sieve
