#include "sievelab/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "sievelab/errors.hpp"

namespace sievelab::numerics {
namespace {

// Kronrod 15-point nodes (non-negative half) and weights; the embedded
// Gauss 7-point rule uses the odd-indexed nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  int depth;
};

struct ByError {
  bool operator()(const Panel& a, const Panel& b) const {
    if (a.error != b.error) return a.error < b.error;
    return a.lo > b.lo;
  }
};

double checked_eval(const RealFn& fn, double x) {
  const double y = fn(x);
  if (!std::isfinite(y)) throw EvaluationError("integrand is not finite", x);
  return y;
}

Panel kronrod(const RealFn& fn, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = checked_eval(fn, center);
  double kronrod_sum = fc * kWgk[7];
  double gauss_sum = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = checked_eval(fn, center - dx);
    const double f2 = checked_eval(fn, center + dx);
    kronrod_sum += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss_sum += kWg[j / 2] * (f1 + f2);
  }
  const double value = kronrod_sum * half;
  const double error = std::abs((kronrod_sum - gauss_sum) * half);
  return {lo, hi, value, error, depth};
}

}  // namespace

double integrate(const RealFn& fn, double lo, double hi, const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0) || !(spec.rel_tol > 0) || spec.max_depth < 1) {
    throw DomainError("quadrature tolerances must be positive and max_depth >= 1");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("integration limits must be finite");
  if (lo > hi) throw DomainError("integrate requires lo <= hi");
  if (lo == hi) return 0.0;

  std::priority_queue<Panel, std::vector<Panel>, ByError> panels;
  Panel first = kronrod(fn, lo, hi, 0);
  double total = first.value;
  double total_error = first.error;
  panels.push(first);

  // Rounding in the running sums can leave a residue far below any panel's
  // contribution; stop once the estimate is at machine resolution.
  const double eps = 50 * std::numeric_limits<double>::epsilon();
  while (total_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    Panel worst = panels.top();
    if (worst.error <= eps * std::abs(worst.value)) break;
    if (worst.depth >= spec.max_depth) {
      throw ConvergenceError("integrate: depth limit " + std::to_string(spec.max_depth) + " reached",
                             total, total_error);
    }
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    Panel left = kronrod(fn, worst.lo, mid, worst.depth + 1);
    Panel right = kronrod(fn, mid, worst.hi, worst.depth + 1);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Resum in interval order so the result does not carry drift from the
  // incremental updates.
  std::vector<Panel> done;
  done.reserve(panels.size());
  while (!panels.empty()) {
    done.push_back(panels.top());
    panels.pop();
  }
  std::sort(done.begin(), done.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  double sum = 0;
  for (const Panel& p : done) sum += p.value;
  return sum;
}

MinimizeResult minimize_scalar(const RealFn& fn, double lo, double hi, double tol) {
  if (!(lo < hi)) throw DomainError("minimize_scalar requires lo < hi");
  if (!(tol > 0)) throw DomainError("minimize_scalar requires tol > 0");

  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  auto eval = [&fn](double x) {
    const double y = fn(x);
    if (!std::isfinite(y)) throw EvaluationError("objective is not finite", x);
    return y;
  };

  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  int iterations = 0;
  while (b - a > 2 * tol) {
    ++iterations;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, eval(x), iterations};
}

double derivative_central(const RealFn& fn, double x, double h) {
  if (!(h > 0)) throw DomainError("derivative_central requires h > 0");
  const double up = fn(x + h);
  const double down = fn(x - h);
  if (!std::isfinite(up)) throw EvaluationError("function is not finite", x + h);
  if (!std::isfinite(down)) throw EvaluationError("function is not finite", x - h);
  return (up - down) / (2 * h);
}

}  // namespace sievelab::numerics
