#pragma once

#include <string>
#include <vector>

#include "sievelab/numerics.hpp"
#include "sievelab/rational.hpp"

namespace sievelab::thresholds {

/// Which spectral input fixes the level: the unconditional theta = 7/64 or
/// theta = 0 under Selberg's eigenvalue conjecture.
enum class TauMode { kUnconditional, kSelberg };

std::string to_string(TauMode mode);
/// Accepts "unconditional" or "selberg".
TauMode parse_tau_mode(std::string_view text);

Rational theta_for(TauMode mode);

/// Level of distribution tau = 1/4 - theta/2 for 0 <= theta < 1/2.
Rational tau_from_theta(const Rational& theta);

struct Prop35Components {
  double I1 = 0;
  double I2 = 0;
  double I3 = 0;
  double sum() const { return I1 + I2 + I3; }
};

/// Throws DomainError unless 1 <= a < 3 < a+5 < b <= 8.
void check_prop35_domain(double a, double b);

/// I1 in closed form, I2 by double and I3 by triple quadrature.
Prop35Components prop35_components(double a, double b, const numerics::QuadratureSpec& spec = {});

/// b/((b-a) tau) - 1 + (2e^g / f(b)) (I1 + I2 + I3).
double prop35_threshold(double a, double b, const Rational& tau,
                        const numerics::QuadratureSpec& spec = {});

/// Weighted-sieve threshold in dimension one with tau*mu = 1:
/// u - 1 + (1/f(tau v)) * integral_1^{v/u} F(tau v - s)(1 - (u/v)s) ds/s.
double dh_threshold_linear(const Rational& tau, double u, double v,
                           const numerics::QuadratureSpec& spec = {});

/// integral_1^{b-a} F(b-s)(1/s - 1/(b-a)) ds, split at the kinks of F.
double linear_sieve_integral(double a, double b, const numerics::QuadratureSpec& spec = {});

/// Dimension-two threshold m(zeta) built on hr_upper; 0 < zeta <= beta_2.
double m_zeta(double mu, double zeta);

/// Minimizes m_zeta over (1e-6, beta_2 - 1e-6) to 1e-6. Requires mu > 2.
numerics::MinimizeResult minimize_m(double mu);

/// Smallest admissible integer r > threshold. Thresholds within 1e-9 of an
/// integer are flagged instead of resolved.
struct AdmissibleR {
  int r = 0;
  bool ambiguous = false;
};
AdmissibleR admissible_r(double threshold);

struct ReportRow {
  std::string name;
  double computed = 0;
  std::string reference;  // reference value as printed
  double lo = 0;      // acceptance interval
  double hi = 0;
  bool lo_open = false;
  bool hi_open = false;
  bool pass = false;
};

struct ThresholdReport {
  TauMode mode = TauMode::kUnconditional;
  Rational theta;
  Rational tau;
  double a = 0;
  double b = 0;
  std::vector<ReportRow> rows;
  int r_linear = 0;
  int r_quadratic = 0;
  bool ambiguous = false;

  bool all_pass() const;
};

ThresholdReport reproduce_constants(TauMode mode);

}  // namespace sievelab::thresholds
