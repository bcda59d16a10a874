#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sievelab/localdata.hpp"
#include "sievelab/quadforms.hpp"

namespace sievelab::lattice {

using quad::Matrix3I;
using quad::TernaryForm;
using quad::Vec3;
using Projection = local::Variant;

/// Radial C^2 cutoff: 1 for r <= T/c0, 0 for r >= c0 T, quintic smoothstep
/// in between. Requires T >= 10 and c0 > 1.
double weight_radial(double r, double T, double c0);
double weight_FT(const Vec3& x, double T, double c0);

struct EnumerateOptions {
  unsigned threads = 0;            // 0 = hardware concurrency
  double work_budget = 2.0e9;      // max (x_i, x_j) pairs scanned
};

/// Integer solutions of f(x) = t with |x| <= R, lexicographically sorted.
/// Requires t != 0 and f nondegenerate.
std::vector<Vec3> enumerate_points(const TernaryForm& f, std::int64_t t, double R,
                                   const EnumerateOptions& options = {});

/// |x1|, |x1 x2| or |x1 x2 x3|.
std::uint64_t projection_value(const Vec3& x, Projection projection);

struct WeightedSequence {
  TernaryForm form;
  std::int64_t t = 0;
  double T = 0;
  double c0 = 0;
  Projection projection = Projection::kX1;
  std::map<std::uint64_t, double> values;              // n -> a_n, n >= 0
  std::map<std::uint64_t, std::uint64_t> point_counts;  // n -> points of positive weight
  double X = 0;   // sum over n >= 1 of a_n, in ascending n
  double a0 = 0;
  std::uint64_t point_total = 0;  // points with positive weight

  double a(std::uint64_t n) const;
  /// |A_d| = sum over n >= 1 with d | n of a_n, in ascending n.
  double sum_divisible(std::uint64_t d) const;
  /// Columns n,a_n.
  std::string to_csv() const;
};

WeightedSequence build_sequence(const TernaryForm& f, std::int64_t t, double T, double c0, Projection projection,
                                const EnumerateOptions& options = {});

/// R_d = |A_d| - (omega(d)/d) X for square-free d coprime to B.
double residual_Rd(const WeightedSequence& seq, const local::LocalDensityTable& omega, std::uint64_t d);

/// D = X^tau / log^A1 X.
double level_cutoff(double X, double tau, double A1);

struct LevelStatistic {
  double value = 0;     // sum over admissible d < D of 4^nu(d) |R_d|
  double cutoff = 0;    // D
  std::size_t terms = 0;
  double envelope = 0;  // X / log^{kappa+1} X
};

LevelStatistic level_statistic(const WeightedSequence& seq, const local::LocalDensityTable& omega, double D,
                               int kappa = 1);

struct DoublingTrend {
  double ratio_T = 0;   // statistic / X at T
  double ratio_2T = 0;  // statistic / X at 2T
  double growth = 0;    // ratio_2T / ratio_T
  bool green = false;   // growth <= 2
};

/// Level statistic at a fixed cutoff D, compared between scales T and 2T.
DoublingTrend doubling_trend(const WeightedSequence& at_T, const WeightedSequence& at_2T,
                             const local::LocalDensityTable& omega, double D);

/// Prime factors of n outside B, counted with multiplicity unless disabled.
int omega_B_count(std::uint64_t n, const std::vector<std::uint64_t>& B, bool multiplicity = true);

struct Census {
  double weighted = 0;        // sum of a_n over n >= 1 in P_r(B)
  std::uint64_t raw_count = 0;  // points behind those a_n
};

Census census(const WeightedSequence& seq, int r, const std::vector<std::uint64_t>& B, bool multiplicity = true);

struct AutomorphSet {
  std::vector<Matrix3I> generators;  // lexicographic, identity included
  int search_height = 0;
};

/// All M with entries in [-H, H], M^T G M = G and det M = 1, plus the identity.
AutomorphSet find_automorphs(const TernaryForm& f, int H);

bool is_automorph(const TernaryForm& f, const Matrix3I& m);
std::int64_t determinant(const Matrix3I& m);
Vec3 act(const Matrix3I& m, const Vec3& x);

struct Partition {
  /// Each class sorted; classes ordered by their smallest point.
  std::vector<std::vector<Vec3>> classes;
  std::size_t class_count() const { return classes.size(); }
};

/// Closure of the point set under the generators and their inverses,
/// restricted to the given points.
Partition orbit_partition(const std::vector<Vec3>& points, const AutomorphSet& autos);

/// Columns x1,x2,x3,weight.
std::string points_csv(const std::vector<Vec3>& points, double T, double c0);

}  // namespace sievelab::lattice
