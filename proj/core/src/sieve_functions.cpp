#include "sievelab/sieve_functions.hpp"

#include <cmath>
#include <string>

#include "sievelab/errors.hpp"

namespace sievelab::sieve {

using numerics::integrate;
using numerics::QuadratureSpec;

bool SieveConstants::has_beta(double kappa) { return kappa == 1.0 || kappa == 2.0; }

double SieveConstants::beta(double kappa) {
  if (kappa == 1.0) return kBetaLinear;
  if (kappa == 2.0) return kBetaQuadratic;
  throw DomainError("no tabulated sifting limit for kappa=" + std::to_string(kappa));
}

double log_kernel_integral(double x, const QuadratureSpec& spec) {
  if (x <= 2) return 0.0;
  return integrate([](double t) { return std::log(t - 1) / t; }, 2, x, spec);
}

double cross_kernel_integral(double t, double x, const QuadratureSpec& spec) {
  if (x <= t + 2) return 0.0;
  const double shift = t + 1;
  return integrate([shift](double u) { return std::log((u - 1) / shift) / u; }, t + 2, x, spec);
}

namespace {

// 1 + G(s-1) + integral_2^{s-3} log(t-1)/t K(t, s-1) dt
double upper_bracket(double s, const QuadratureSpec& spec) {
  double value = 1 + log_kernel_integral(s - 1, spec);
  if (s > 5) {
    const QuadratureSpec inner = spec.nested();
    value += integrate(
        [s, &inner](double t) { return std::log(t - 1) / t * cross_kernel_integral(t, s - 1, inner); },
        2, s - 3, spec);
  }
  return value;
}

double lower_bracket(double s, const QuadratureSpec& spec) {
  double value = std::log(s - 1);
  if (s >= 4) {
    const QuadratureSpec inner = spec.nested();
    value += integrate([&inner](double t) { return log_kernel_integral(t - 1, inner) / t; }, 3, s - 1,
                       spec);
  }
  if (s > 6) {
    const QuadratureSpec inner = spec.nested();
    value += integrate(
        [s, &inner](double t) {
          if (t >= s - 4) return 0.0;
          const double shift = t + 1;
          const double kernel = integrate(
              [s, shift](double u) { return std::log((u - 1) / shift) / u * std::log((s - 1) / (u + 1)); },
              t + 2, s - 2, inner);
          return std::log(t - 1) / t * kernel;
        },
        2, s - 4, spec);
  }
  return value;
}

}  // namespace

double F_lin(double s, const QuadratureSpec& spec) {
  if (!(s > 0) || s > 7) throw DomainError("F_lin defined for 0 < s <= 7, got s=" + std::to_string(s));
  if (s < 3) return kTwoExpGamma / s;
  return kTwoExpGamma / s * upper_bracket(s, spec);
}

double f_lin(double s, const QuadratureSpec& spec) {
  if (!(s > 0) || s > 8) throw DomainError("f_lin defined for 0 < s <= 8, got s=" + std::to_string(s));
  if (s <= 2) return 0.0;
  return kTwoExpGamma / s * lower_bracket(s, spec);
}

double hr_upper(double kappa, double zeta) {
  if (!SieveConstants::has_beta(kappa) || kappa == 1.0) {
    throw DomainError("hr_upper: unsupported kappa=" + std::to_string(kappa));
  }
  const double beta = SieveConstants::beta(kappa);
  if (!(zeta > 0) || zeta > beta) {
    throw DomainError("hr_upper requires 0 < zeta <= beta_kappa, got zeta=" + std::to_string(zeta));
  }
  return (kappa + zeta) * std::log(beta / zeta) - kappa + zeta * kappa / beta;
}

}  // namespace sievelab::sieve
