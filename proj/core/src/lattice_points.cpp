#include "sievelab/lattice_points.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "sievelab/arith.hpp"
#include "sievelab/errors.hpp"

namespace sievelab::lattice {

namespace {

void check_weight_params(double T, double c0) {
  if (!(T >= 10)) throw DomainError("weight requires T >= 10");
  if (!(c0 > 1)) throw DomainError("weight requires c0 > 1");
}

std::int64_t norm2(const Vec3& x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; }

}  // namespace

double weight_radial(double r, double T, double c0) {
  check_weight_params(T, c0);
  const double inner = T / c0;
  const double outer = c0 * T;
  if (r <= inner) return 1.0;
  if (r >= outer) return 0.0;
  const double s = (r - inner) / (outer - inner);
  return 1.0 - s * s * s * (10 - 15 * s + 6 * s * s);
}

double weight_FT(const Vec3& x, double T, double c0) {
  return weight_radial(std::sqrt(static_cast<double>(norm2(x))), T, c0);
}

std::vector<Vec3> enumerate_points(const TernaryForm& f, std::int64_t t, double R, const EnumerateOptions& options) {
  if (t == 0) throw DomainError("enumerate_points requires t != 0");
  if (quad::det_form(f).value == 0) throw DegenerateError("enumerate_points requires a nondegenerate form");
  if (!(R >= 0) || !std::isfinite(R)) throw DomainError("enumerate_points requires a finite radius R >= 0");
  const double side = 2 * std::floor(R) + 1;
  if (side * side > options.work_budget) {
    throw ResourceError("enumeration radius " + std::to_string(R) + " exceeds the work budget", side * side,
                        options.work_budget);
  }

  const auto r2 = static_cast<std::int64_t>(std::floor(R * R));
  const auto rmax = static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(r2)));
  const quad::CoordinateSolver solver(f, t);
  const auto [fi, fj] = solver.free();
  const int piv = solver.pivot();

  auto scan = [&](std::int64_t u_lo, std::int64_t u_hi, std::vector<Vec3>& out) {
    for (std::int64_t u = u_lo; u <= u_hi; ++u) {
      const std::int64_t rest = r2 - u * u;
      const auto wmax = static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(rest)));
      for (std::int64_t w = -wmax; w <= wmax; ++w) {
        const std::int64_t room = rest - w * w;
        auto emit = [&](std::int64_t z) {
          if (z * z > room) return;
          Vec3 x{};
          x[fi] = u;
          x[fj] = w;
          x[piv] = z;
          out.push_back(x);
        };
        const auto roots = solver.solve(u, w);
        if (roots.every_value) {
          const auto zmax = static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(room)));
          for (std::int64_t z = -zmax; z <= zmax; ++z) emit(z);
        } else {
          for (int k = 0; k < roots.count; ++k) {
            if (std::llabs(roots.values[k]) <= rmax) emit(roots.values[k]);
          }
        }
      }
    }
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, 2 * rmax + 1));
  std::vector<std::vector<Vec3>> parts(threads);
  if (threads <= 1) {
    scan(-rmax, rmax, parts[0]);
  } else {
    std::vector<std::jthread> workers;
    const std::int64_t span = 2 * rmax + 1;
    for (unsigned k = 0; k < threads; ++k) {
      const std::int64_t lo = -rmax + span * k / threads;
      const std::int64_t hi = -rmax + span * (k + 1) / threads - 1;
      workers.emplace_back([&, lo, hi, k] { scan(lo, hi, parts[k]); });
    }
  }
  std::vector<Vec3> points;
  for (auto& part : parts) points.insert(points.end(), part.begin(), part.end());
  std::sort(points.begin(), points.end());
  return points;
}

std::uint64_t projection_value(const Vec3& x, Projection projection) {
  const auto a = static_cast<std::uint64_t>(std::llabs(x[0]));
  switch (projection) {
    case Projection::kX1: return a;
    case Projection::kX1X2: return a * static_cast<std::uint64_t>(std::llabs(x[1]));
    default: return a * static_cast<std::uint64_t>(std::llabs(x[1])) * static_cast<std::uint64_t>(std::llabs(x[2]));
  }
}

double WeightedSequence::a(std::uint64_t n) const {
  const auto it = values.find(n);
  return it == values.end() ? 0.0 : it->second;
}

double WeightedSequence::sum_divisible(std::uint64_t d) const {
  if (d == 0) throw DomainError("sum_divisible requires d >= 1");
  double total = 0;
  for (auto it = values.upper_bound(0); it != values.end(); ++it) {
    if (it->first % d == 0) total += it->second;
  }
  return total;
}

std::string WeightedSequence::to_csv() const {
  std::ostringstream os;
  os.precision(10);
  os << "n,a_n\n";
  for (const auto& [n, v] : values) os << n << ',' << v << '\n';
  return os.str();
}

WeightedSequence build_sequence(const TernaryForm& f, std::int64_t t, double T, double c0, Projection projection,
                                const EnumerateOptions& options) {
  check_weight_params(T, c0);
  WeightedSequence seq;
  seq.form = f;
  seq.t = t;
  seq.T = T;
  seq.c0 = c0;
  seq.projection = projection;
  for (const Vec3& x : enumerate_points(f, t, c0 * T, options)) {
    const double w = weight_FT(x, T, c0);
    if (w <= 0) continue;
    const std::uint64_t n = projection_value(x, projection);
    seq.values[n] += w;
    seq.point_counts[n] += 1;
    ++seq.point_total;
  }
  seq.a0 = seq.a(0);
  seq.X = seq.sum_divisible(1);
  return seq;
}

double residual_Rd(const WeightedSequence& seq, const local::LocalDensityTable& omega, std::uint64_t d) {
  if (d == 0 || !arith::is_squarefree(d)) throw DomainError("residual_Rd requires square-free d >= 1");
  if (std::gcd(d, std::uint64_t{2 * 3 * 5 * 7}) != 1) throw DomainError("residual_Rd requires (d, B) = 1");
  if (omega.variant != seq.projection || !(omega.form == seq.form) || omega.t != seq.t) {
    throw DomainError("density table does not match the sequence (form, t, projection)");
  }
  const double density = to_double(omega.omega_d(d));  // already omega(d)/d
  return seq.sum_divisible(d) - density * seq.X;
}

double level_cutoff(double X, double tau, double A1) {
  if (!(X > 1)) throw DomainError("level_cutoff requires X > 1");
  return std::pow(X, tau) / std::pow(std::log(X), A1);
}

LevelStatistic level_statistic(const WeightedSequence& seq, const local::LocalDensityTable& omega, double D,
                               int kappa) {
  if (!(D > 1)) throw DomainError("level_statistic requires D > 1");
  LevelStatistic out;
  out.cutoff = D;
  if (seq.X > 1) out.envelope = seq.X / std::pow(std::log(seq.X), kappa + 1);
  for (std::uint64_t d = 1; static_cast<double>(d) < D; ++d) {
    if (std::gcd(d, std::uint64_t{210}) != 1 || !arith::is_squarefree(d)) continue;
    const int nu = static_cast<int>(arith::factorize(d).size());
    out.value += std::pow(4.0, nu) * std::abs(residual_Rd(seq, omega, d));
    ++out.terms;
  }
  return out;
}

DoublingTrend doubling_trend(const WeightedSequence& at_T, const WeightedSequence& at_2T,
                             const local::LocalDensityTable& omega, double D) {
  if (at_T.form != at_2T.form || at_T.t != at_2T.t || at_T.projection != at_2T.projection ||
      at_T.c0 != at_2T.c0 || std::abs(at_2T.T - 2 * at_T.T) > 1e-9 * at_T.T) {
    throw DomainError("doubling_trend needs the same configuration at T and 2T");
  }
  if (!(at_T.X > 0) || !(at_2T.X > 0)) throw DegenerateError("doubling_trend needs X > 0 at both scales");
  DoublingTrend out;
  out.ratio_T = level_statistic(at_T, omega, D).value / at_T.X;
  out.ratio_2T = level_statistic(at_2T, omega, D).value / at_2T.X;
  if (out.ratio_T > 0) {
    out.growth = out.ratio_2T / out.ratio_T;
  } else {
    out.growth = out.ratio_2T > 0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  out.green = out.growth <= 2;
  return out;
}

int omega_B_count(std::uint64_t n, const std::vector<std::uint64_t>& B, bool multiplicity) {
  if (n == 0) throw DomainError("omega_B_count requires n >= 1");
  int count = 0;
  for (const auto& [p, e] : arith::factorize(n)) {
    if (std::find(B.begin(), B.end(), p) != B.end()) continue;
    count += multiplicity ? e : 1;
  }
  return count;
}

Census census(const WeightedSequence& seq, int r, const std::vector<std::uint64_t>& B, bool multiplicity) {
  if (r < 0) throw DomainError("census requires r >= 0");
  Census out;
  for (auto it = seq.values.upper_bound(0); it != seq.values.end(); ++it) {
    if (omega_B_count(it->first, B, multiplicity) > r) continue;
    out.weighted += it->second;
    out.raw_count += seq.point_counts.at(it->first);
  }
  return out;
}

std::int64_t determinant(const Matrix3I& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Vec3 act(const Matrix3I& m, const Vec3& x) {
  Vec3 y{};
  for (int i = 0; i < 3; ++i) y[i] = m[i][0] * x[0] + m[i][1] * x[1] + m[i][2] * x[2];
  return y;
}

namespace {

Matrix3I identity() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

// v^T (2G) w
std::int64_t bilinear2(const Matrix3I& twice_gram, const Vec3& v, const Vec3& w) {
  std::int64_t s = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) s += v[i] * twice_gram[i][j] * w[j];
  }
  return s;
}

Matrix3I adjugate(const Matrix3I& m) {
  Matrix3I a{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      a[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  }
  return a;
}

}  // namespace

bool is_automorph(const TernaryForm& f, const Matrix3I& m) {
  const Matrix3I g2 = f.doubled_gram();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Vec3 ci{m[0][i], m[1][i], m[2][i]};
      const Vec3 cj{m[0][j], m[1][j], m[2][j]};
      if (bilinear2(g2, ci, cj) != g2[i][j]) return false;
    }
  }
  return true;
}

AutomorphSet find_automorphs(const TernaryForm& f, int H) {
  if (H < 0) throw DomainError("find_automorphs requires H >= 0");
  AutomorphSet out;
  out.search_height = H;
  out.generators.push_back(identity());
  const Matrix3I g2 = f.doubled_gram();

  // Column i of M must have norm G_ii; columns pair to G_ij.
  std::array<std::vector<Vec3>, 3> columns;
  for (std::int64_t a = -H; a <= H; ++a) {
    for (std::int64_t b = -H; b <= H; ++b) {
      for (std::int64_t c = -H; c <= H; ++c) {
        const Vec3 v{a, b, c};
        const std::int64_t n = bilinear2(g2, v, v);
        for (int i = 0; i < 3; ++i) {
          if (n == g2[i][i]) columns[i].push_back(v);
        }
      }
    }
  }
  for (const Vec3& c0 : columns[0]) {
    for (const Vec3& c1 : columns[1]) {
      if (bilinear2(g2, c0, c1) != g2[0][1]) continue;
      for (const Vec3& c2 : columns[2]) {
        if (bilinear2(g2, c0, c2) != g2[0][2] || bilinear2(g2, c1, c2) != g2[1][2]) continue;
        const Matrix3I m{{{c0[0], c1[0], c2[0]}, {c0[1], c1[1], c2[1]}, {c0[2], c1[2], c2[2]}}};
        if (determinant(m) == 1) out.generators.push_back(m);
      }
    }
  }
  std::sort(out.generators.begin(), out.generators.end());
  out.generators.erase(std::unique(out.generators.begin(), out.generators.end()), out.generators.end());
  return out;
}

Partition orbit_partition(const std::vector<Vec3>& points, const AutomorphSet& autos) {
  std::vector<Vec3> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<std::size_t> parent(sorted.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  auto index_of = [&](const Vec3& x) -> std::ptrdiff_t {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    return it != sorted.end() && *it == x ? it - sorted.begin() : -1;
  };

  std::vector<Matrix3I> maps;
  for (const Matrix3I& m : autos.generators) {
    maps.push_back(m);
    if (determinant(m) == 1) maps.push_back(adjugate(m));
  }
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (const Matrix3I& m : maps) {
      const std::ptrdiff_t j = index_of(act(m, sorted[i]));
      if (j < 0) continue;
      const std::size_t a = find(i), b = find(static_cast<std::size_t>(j));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }

  // Roots are the smallest index of each class, so classes come out ordered.
  Partition out;
  std::vector<std::ptrdiff_t> slot(sorted.size(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const std::size_t root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(out.classes.size());
      out.classes.emplace_back();
    }
    out.classes[static_cast<std::size_t>(slot[root])].push_back(sorted[i]);
  }
  return out;
}

std::string points_csv(const std::vector<Vec3>& points, double T, double c0) {
  std::ostringstream os;
  os.precision(10);
  os << "x1,x2,x3,weight\n";
  for (const Vec3& x : points) os << x[0] << ',' << x[1] << ',' << x[2] << ',' << weight_FT(x, T, c0) << '\n';
  return os.str();
}

}  // namespace sievelab::lattice
