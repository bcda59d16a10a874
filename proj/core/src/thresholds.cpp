#include "sievelab/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "sievelab/errors.hpp"
#include "sievelab/sieve_functions.hpp"

namespace sievelab::thresholds {

using numerics::integrate;
using numerics::QuadratureSpec;
using sieve::F_lin;
using sieve::f_lin;
using sieve::kTwoExpGamma;

std::string to_string(TauMode mode) {
  return mode == TauMode::kUnconditional ? "unconditional" : "selberg";
}

TauMode parse_tau_mode(std::string_view text) {
  if (text == "unconditional") return TauMode::kUnconditional;
  if (text == "selberg") return TauMode::kSelberg;
  throw DomainError("unknown mode '" + std::string(text) + "' (expected unconditional|selberg)");
}

Rational theta_for(TauMode mode) {
  return mode == TauMode::kUnconditional ? Rational(7, 64) : Rational(0);
}

Rational tau_from_theta(const Rational& theta) {
  if (theta < 0 || theta >= Rational(1, 2)) {
    throw DomainError("tau_from_theta requires 0 <= theta < 1/2, got " + sievelab::to_string(theta));
  }
  return Rational(1, 4) - theta / 2;
}

void check_prop35_domain(double a, double b) {
  if (!(1 <= a)) throw DomainError("require 1 <= a");
  if (!(a < 3)) throw DomainError("require a < 3");
  if (!(a + 5 < b)) throw DomainError("require a + 5 < b");
  if (!(b <= 8)) throw DomainError("require b <= 8");
}

Prop35Components prop35_components(double a, double b, const QuadratureSpec& spec) {
  check_prop35_domain(a, b);
  Prop35Components out;
  out.I1 = std::log((b - 1) * (b - a) / a) / b - std::log((b - 1) / a) / (b - a);

  auto weight = [a, b](double t) { return (1 / (b - t) - 1 / (b - a)) / t; };
  const QuadratureSpec inner = spec.nested();
  out.I2 = integrate([&](double t) { return weight(t) * sieve::log_kernel_integral(t - 1, inner); }, 3,
                     b - 1, spec);

  const QuadratureSpec innermost = inner.nested();
  out.I3 = integrate(
      [&](double t) {
        const double middle = integrate(
            [&](double u) {
              return std::log(u - 1) / u * sieve::cross_kernel_integral(u, t - 1, innermost);
            },
            2, t - 3, inner);
        return weight(t) * middle;
      },
      5, b - 1, spec);
  return out;
}

double prop35_threshold(double a, double b, const Rational& tau, const QuadratureSpec& spec) {
  check_prop35_domain(a, b);
  if (tau <= 0) throw DomainError("prop35_threshold requires tau > 0");
  const double tau_d = to_double(tau);
  const Prop35Components parts = prop35_components(a, b, spec);
  return b / ((b - a) * tau_d) - 1 + kTwoExpGamma / f_lin(b, spec) * parts.sum();
}

namespace {

// integral_lo^hi of F(shift - s) * weight(s), split where shift - s crosses
// the piece boundaries 3 and 5.
template <typename Weight>
double integrate_against_F(double shift, double lo, double hi, Weight weight, const QuadratureSpec& spec) {
  std::vector<double> cuts{lo};
  for (double kink : {shift - 5, shift - 3}) {
    if (kink > lo && kink < hi) cuts.push_back(kink);
  }
  cuts.push_back(hi);
  const QuadratureSpec inner = spec.nested();
  double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate([&](double s) { return F_lin(shift - s, inner) * weight(s); }, cuts[i], cuts[i + 1],
                       spec);
  }
  return total;
}

}  // namespace

double linear_sieve_integral(double a, double b, const QuadratureSpec& spec) {
  check_prop35_domain(a, b);
  const double span = b - a;
  return integrate_against_F(
      b, 1, span, [span](double s) { return 1 / s - 1 / span; }, spec);
}

double dh_threshold_linear(const Rational& tau, double u, double v, const QuadratureSpec& spec) {
  if (tau <= 0) throw DomainError("dh_threshold_linear requires tau > 0");
  const double tau_d = to_double(tau);
  if (!(1 / tau_d < u)) throw DomainError("violated 1/tau < u");
  if (!(u <= v)) throw DomainError("violated u <= v");
  const double tv = tau_d * v;
  if (!(2 < tv)) throw DomainError("violated beta_1 = 2 < tau*v");
  if (!(tv <= 8)) throw DomainError("violated tau*v <= 8 (domain of f)");
  const double upper = v / u;
  if (!(tv - upper > 0)) throw DomainError("violated tau*v - v/u > 0 (domain of F)");
  const double ratio = u / v;
  const double integral =
      upper <= 1 ? 0.0
                 : integrate_against_F(
                       tv, 1, upper, [ratio](double s) { return (1 - ratio * s) / s; }, spec);
  return u - 1 + integral / f_lin(tv, spec);
}

double m_zeta(double mu, double zeta) {
  if (!(mu > 0)) throw DomainError("m_zeta requires mu > 0");
  const double beta = sieve::SieveConstants::kBetaQuadratic;
  if (!(zeta > 0) || zeta > beta) throw DomainError("m_zeta requires 0 < zeta <= beta_2");
  return (1 + zeta) * mu - 1 + (2 + zeta) * std::log(beta / zeta) - 2 + zeta * (2 - mu) / beta;
}

numerics::MinimizeResult minimize_m(double mu) {
  if (!(mu > 2)) throw DomainError("minimize_m requires mu > 2");
  constexpr double eps = 1e-6;
  return numerics::minimize_scalar([mu](double z) { return m_zeta(mu, z); }, eps,
                                   sieve::SieveConstants::kBetaQuadratic - eps, 1e-6);
}

AdmissibleR admissible_r(double threshold) {
  const double nearest = std::round(threshold);
  AdmissibleR out;
  out.ambiguous = std::abs(threshold - nearest) <= 1e-9;
  out.r = static_cast<int>(std::floor(threshold)) + 1;
  return out;
}

bool ThresholdReport::all_pass() const {
  return !ambiguous && std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

namespace {

ReportRow interval_row(std::string name, double computed, std::string ref, double lo, double hi,
                       bool lo_open = false, bool hi_open = false) {
  ReportRow row{std::move(name), computed, std::move(ref), lo, hi, lo_open, hi_open, false};
  const bool above = lo_open ? computed > lo : computed >= lo;
  const bool below = hi_open ? computed < hi : computed <= hi;
  row.pass = above && below;
  return row;
}

ReportRow exact_row(std::string name, double computed, double expected, std::string ref) {
  return {std::move(name), computed, std::move(ref), expected, expected, false, false, computed == expected};
}

// Reference bounds for each mode.
struct ReferenceFigures {
  double a, b;
  double I1, I2, I3;
  double I1_lo, I2_lo;  // lower ends of the accepted intervals
  double inv_f;         // 2e^g / f(b)
  double threshold;
  double threshold_lo, threshold_hi;
  int r_linear;
  double zeta, m;
  int r_quadratic;
};

constexpr ReferenceFigures kUnconditional{1,      6.6,    0.21442, 0.05558, 0.00001, 0.21435, 0.0550, 3.5623,
                                       5.996,  5.95,   5.997,   6,       0.19214, 15.6327, 16};
constexpr ReferenceFigures kSelberg{1,     7,     0.21331, 0.07015, 0.00003, 0.21325, 0.0695, 3.5622,
                                  4.676, 4.65,  4.677,   5,       0.23556, 13.0287, 14};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

}  // namespace

ThresholdReport reproduce_constants(TauMode mode) {
  const ReferenceFigures& ref = mode == TauMode::kUnconditional ? kUnconditional : kSelberg;
  ThresholdReport report;
  report.mode = mode;
  report.theta = theta_for(mode);
  report.tau = tau_from_theta(report.theta);
  report.a = ref.a;
  report.b = ref.b;

  const Rational expected_tau = mode == TauMode::kUnconditional ? Rational(25, 128) : Rational(1, 4);
  {
    ReportRow row{"tau", to_double(report.tau), sievelab::to_string(expected_tau), to_double(expected_tau),
                  to_double(expected_tau)};
    row.pass = report.tau == expected_tau;
    report.rows.push_back(row);
  }

  const double F7 = F_lin(7);
  const double f8 = f_lin(8);
  report.rows.push_back(interval_row("F(7)", F7, "<= 1.0000050", 1, 1.0000050));
  report.rows.push_back(interval_row("f(8)", f8, ">= 0.9999648", 0.9999648, 1));

  const Prop35Components parts = prop35_components(ref.a, ref.b);
  report.rows.push_back(
      interval_row("I1", parts.I1, "< " + fmt(ref.I1), ref.I1_lo, ref.I1));
  report.rows.push_back(
      interval_row("I2", parts.I2, "< " + fmt(ref.I2), ref.I2_lo, ref.I2));
  report.rows.push_back(interval_row("I3", parts.I3, "< " + fmt(ref.I3), 0, ref.I3, true));

  const double inv_f = sieve::kTwoExpGamma / f_lin(ref.b);
  report.rows.push_back(
      interval_row("2e^gamma/f(" + fmt(ref.b) + ")", inv_f, "< " + fmt(ref.inv_f), 3.56214, ref.inv_f,
                   true, true));

  const double tau_d = to_double(report.tau);
  const double threshold =
      ref.b / ((ref.b - ref.a) * tau_d) - 1 + sieve::kTwoExpGamma / f_lin(ref.b) * parts.sum();
  report.rows.push_back(interval_row("linear threshold", threshold, "> " + fmt(ref.threshold),
                                     ref.threshold_lo, ref.threshold_hi));
  const AdmissibleR linear = admissible_r(threshold);
  report.r_linear = linear.r;
  report.rows.push_back(exact_row("r_linear", linear.r, ref.r_linear, std::to_string(ref.r_linear)));

  // Dimension two: mu = 2/tau.
  const Rational mu = Rational(2) / report.tau;
  const double mu_d = to_double(mu);
  report.rows.push_back(exact_row("mu = 2/tau", mu_d, mu_d, sievelab::to_string(mu)));
  const numerics::MinimizeResult best = minimize_m(mu_d);
  report.rows.push_back(
      interval_row("zeta*", best.argmin, fmt(ref.zeta), ref.zeta - 1e-3, ref.zeta + 1e-3));
  report.rows.push_back(interval_row("m(zeta*)", best.min_value, fmt(ref.m), ref.m - 2e-3, ref.m + 2e-3));
  const AdmissibleR quadratic = admissible_r(best.min_value);
  report.r_quadratic = quadratic.r;
  report.rows.push_back(
      exact_row("r_quadratic", quadratic.r, ref.r_quadratic, std::to_string(ref.r_quadratic)));

  report.ambiguous = linear.ambiguous || quadratic.ambiguous;
  return report;
}

}  // namespace sievelab::thresholds
