#pragma once

#include <functional>

namespace sievelab::numerics {

inline constexpr double kEulerGamma = 0.57721566490153286060651209;

using RealFn = std::function<double(double)>;

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_depth = 60;

  /// Spec for an integral nested inside one evaluated with this spec:
  /// both tolerances are tightened by a factor of ten.
  QuadratureSpec nested() const { return {abs_tol / 10, rel_tol / 10, max_depth}; }
};

struct MinimizeResult {
  double argmin = 0;
  double min_value = 0;
  int iterations = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [lo, hi].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate is at most max(abs_tol, rel_tol * |I|). Throws EvaluationError
/// if fn is non-finite at a node and ConvergenceError (carrying the current
/// estimate) once a subinterval would exceed max_depth bisections.
double integrate(const RealFn& fn, double lo, double hi, const QuadratureSpec& spec = {});

/// Golden-section search. fn must be unimodal on [lo, hi]; the returned
/// argmin is within tol of the true minimizer under that assumption.
MinimizeResult minimize_scalar(const RealFn& fn, double lo, double hi, double tol);

/// (fn(x+h) - fn(x-h)) / (2h).
double derivative_central(const RealFn& fn, double x, double h);

}  // namespace sievelab::numerics
