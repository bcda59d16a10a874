#include "sievelab/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "sievelab/arith.hpp"
#include "sievelab/lattice_points.hpp"

namespace sievelab::cli {

namespace {

using lattice::WeightedSequence;

std::string interval(const thresholds::ReportRow& row) {
  std::ostringstream os;
  os.precision(10);
  os << (row.lo_open ? '(' : '[') << row.lo << ", " << row.hi << (row.hi_open ? ')' : ']');
  return os.str();
}

std::string prime_set(const std::vector<std::uint64_t>& ps) {
  std::string out = "{";
  for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? "," : "") + std::to_string(ps[i]);
  return out + "}";
}

std::string matrix_text(const lattice::Matrix3I& m) {
  std::string out = "[";
  for (int i = 0; i < 3; ++i) {
    out += i ? ";" : "";
    for (int j = 0; j < 3; ++j) out += (j ? " " : "") + std::to_string(m[i][j]);
  }
  return out + "]";
}

std::string point_text(const lattice::Vec3& x) {
  return "(" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," + std::to_string(x[2]) + ")";
}

std::string title(const RunConfig& cfg, const std::string& detail) {
  return "sievelab " + to_string(cfg.command) + " (" + detail + ")";
}

std::string sequence_detail(const RunConfig& cfg) {
  std::ostringstream os;
  os << "form=" << cfg.form.to_string() << " t=" << cfg.t << " T=" << format_cell(cfg.T)
     << " c0=" << format_cell(cfg.c0) << " projection=" << local::to_string(cfg.projection);
  return os.str();
}

WeightedSequence sequence_at(const RunConfig& cfg, double T) {
  return lattice::build_sequence(cfg.form, cfg.t, T, cfg.c0, cfg.projection);
}

// Admissible moduli for residuals: square-free and prime to B.
std::vector<std::uint64_t> admissible_moduli(std::uint64_t d_max) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= d_max; ++d) {
    if (std::gcd(d, std::uint64_t{210}) == 1 && arith::is_squarefree(d)) out.push_back(d);
  }
  return out;
}

// r that the weighted sieve delivers for the projection, or "n/a".
std::string theorem_r(local::Variant projection, thresholds::TauMode mode) {
  const bool selberg = mode == thresholds::TauMode::kSelberg;
  switch (projection) {
    case local::Variant::kX1: return selberg ? "5" : "6";
    case local::Variant::kX1X2: return selberg ? "14" : "16";
    case local::Variant::kX1X2X3: return "n/a";
  }
  return "n/a";
}

}  // namespace

Report cmd_constants(const RunConfig& cfg) {
  const thresholds::ThresholdReport rep = thresholds::reproduce_constants(cfg.mode);
  Report out;
  out.title = title(cfg, "mode=" + thresholds::to_string(cfg.mode));
  out.summary = {{"theta", sievelab::to_string(rep.theta)},
                 {"tau", sievelab::to_string(rep.tau)},
                 {"a", rep.a},
                 {"b", rep.b},
                 {"r_linear", std::int64_t{rep.r_linear}},
                 {"r_quadratic", std::int64_t{rep.r_quadratic}},
                 {"ambiguous", rep.ambiguous}};
  Table table{"reproduction", {"quantity", "computed", "reference", "accepted", "pass"}, {}};
  for (const auto& row : rep.rows) {
    table.rows.push_back({row.name, row.computed, row.reference, interval(row), row.pass});
    out.checks.push_back({row.name, row.pass});
  }
  out.tables.push_back(std::move(table));
  return out;
}

Report cmd_local(const RunConfig& cfg) {
  const auto table = local::build_density_table(cfg.form, cfg.t, cfg.projection, cfg.p_max);
  const auto bad = local::bad_primes(cfg.form, cfg.t, cfg.projection, cfg.p_max);
  Report out;
  out.title = title(cfg, "form=" + cfg.form.to_string() + " t=" + std::to_string(cfg.t) +
                             " variant=" + local::to_string(cfg.projection) + " pmax=" + std::to_string(cfg.p_max));
  Table rows{"densities",
             {"p", "count_V", "count_V0", "omega_num", "omega_den", "is_bad", "cassels", "agreement"},
             {}};
  bool agree = true;
  std::uint64_t eligible = 0;
  for (const auto& [p, e] : table.entries) {
    Cell cassels = std::string("n/a"), agreement = std::string("n/a");
    try {
      const auto c = local::cassels_count(cfg.form, cfg.t, p);
      cassels = c;
      agreement = c == e.count_V;
      agree = agree && c == e.count_V;
      ++eligible;
    } catch (const DomainError&) {
      // preconditions of the closed form fail at this p
    }
    rows.rows.push_back({p, e.count_V, e.count_V0, numerator(e.sieve).convert_to<std::uint64_t>(),
                         denominator(e.sieve).convert_to<std::uint64_t>(), e.is_bad, cassels, agreement});
  }
  out.summary = {{"bad_primes", prime_set(bad.bad)},
                 {"theorem_applies", bad.theorem_applies},
                 {"bad_subset_of_B", bad.subset_of_B},
                 {"cassels_rows", eligible},
                 {"caveat", table.caveat}};
  out.tables.push_back(std::move(rows));
  out.checks.push_back({"closed-form count agrees on every eligible prime", agree});
  if (bad.theorem_applies) out.checks.push_back({"bad primes lie in B = {2,3,5,7}", bad.subset_of_B});
  return out;
}

Report cmd_equidist(const RunConfig& cfg) {
  const WeightedSequence seq = sequence_at(cfg, cfg.T);
  const WeightedSequence seq2 = sequence_at(cfg, 2 * cfg.T);
  const auto table = local::build_density_table(cfg.form, cfg.t, cfg.projection, std::max<std::uint64_t>(cfg.d_max, 7));
  const double D = static_cast<double>(cfg.d_max) + 1;
  const int kappa = local::degree(cfg.projection);

  Report out;
  out.title = title(cfg, sequence_detail(cfg));
  Table rows{"residuals", {"d", "A_d", "expected", "R_d", "R_d/X", "R_d/X at 2T"}, {}};
  double r1 = 1;
  for (std::uint64_t d : admissible_moduli(cfg.d_max)) {
    const double rd = lattice::residual_Rd(seq, table, d);
    const double expected = to_double(table.omega_d(d)) * seq.X;
    if (d == 1) r1 = rd;
    rows.rows.push_back({d, seq.sum_divisible(d), expected, rd, rd / seq.X,
                         lattice::residual_Rd(seq2, table, d) / seq2.X});
  }
  const auto stat = lattice::level_statistic(seq, table, D, kappa);
  const auto trend = lattice::doubling_trend(seq, seq2, table, D);
  const double tau = to_double(thresholds::tau_from_theta(thresholds::theta_for(cfg.mode)));
  out.summary = {{"X", seq.X},
                 {"X at 2T", seq2.X},
                 {"a0", seq.a0},
                 {"points", seq.point_total},
                 {"level X^tau/log X", seq.X > 1 ? lattice::level_cutoff(seq.X, tau, 1) : 0.0},
                 {"statistic cutoff D", D},
                 {"statistic", stat.value},
                 {"statistic terms", static_cast<std::uint64_t>(stat.terms)},
                 {"envelope X/log^(kappa+1) X", stat.envelope},
                 {"statistic/X at T", trend.ratio_T},
                 {"statistic/X at 2T", trend.ratio_2T},
                 {"trend growth", trend.growth},
                 {"trend flag", std::string(trend.green ? "green" : "red")}};
  out.tables.push_back(std::move(rows));
  out.checks.push_back({"R_1 = 0", r1 == 0});
  out.checks.push_back({"statistic/X grows at most 2x from T to 2T", trend.green});
  return out;
}

Report cmd_census(const RunConfig& cfg) {
  const WeightedSequence seq = sequence_at(cfg, cfg.T);
  const auto& B = local::kExceptionalPrimes;
  Report out;
  out.title = title(cfg, sequence_detail(cfg) + " r=" + std::to_string(cfg.r));
  Table rows{"census", {"r", "weighted", "raw_count", "weighted/X"}, {}};
  std::vector<int> orders;
  for (int r = 0; r <= cfg.r; ++r) orders.push_back(r);
  if (cfg.r < 64) orders.push_back(64);
  bool monotone = true;
  double prev = 0, at_r = 0, at_64 = 0;
  for (int r : orders) {
    const lattice::Census c = lattice::census(seq, r, B, cfg.multiplicity);
    rows.rows.push_back({std::int64_t{r}, c.weighted, c.raw_count, seq.X > 0 ? c.weighted / seq.X : 0.0});
    monotone = monotone && c.weighted >= prev;
    prev = c.weighted;
    if (r == cfg.r) at_r = c.weighted;
    if (r == 64) at_64 = c.weighted;
  }
  const lattice::Census other = lattice::census(seq, cfg.r, B, !cfg.multiplicity);
  const std::string implied = theorem_r(cfg.projection, cfg.mode);
  out.summary = {{"X", seq.X},
                 {"points", seq.point_total},
                 {"census at r", at_r},
                 {"multiplicity", cfg.multiplicity},
                 {cfg.multiplicity ? "census at r, distinct primes" : "census at r, with multiplicity", other.weighted},
                 {"theorem r (" + thresholds::to_string(cfg.mode) + ")", implied}};
  out.tables.push_back(std::move(rows));
  out.checks.push_back({"census monotone in r", monotone});
  out.checks.push_back({"census(64) = X", cfg.r <= 64 ? at_64 == seq.X : true});
  if (implied != "n/a" && cfg.r >= std::stoi(implied)) out.checks.push_back({"census at r is positive", at_r > 0});
  return out;
}

Report cmd_enumerate(const RunConfig& cfg) {
  const double R = cfg.c0 * cfg.T;
  const auto points = lattice::enumerate_points(cfg.form, cfg.t, R);
  Report out;
  out.title = title(cfg, "form=" + cfg.form.to_string() + " t=" + std::to_string(cfg.t) + " R=c0*T=" + format_cell(R));
  Table rows{"points", {"x1", "x2", "x3", "weight"}, {}};
  bool on_surface = true;
  std::uint64_t positive = 0;
  for (const auto& x : points) {
    const double w = lattice::weight_FT(x, cfg.T, cfg.c0);
    positive += w > 0;
    on_surface = on_surface && quad::eval_form(cfg.form, x) == cfg.t;
    rows.rows.push_back({x[0], x[1], x[2], w});
  }
  out.summary = {{"points", static_cast<std::uint64_t>(points.size())}, {"positive weight", positive}};
  out.tables.push_back(std::move(rows));
  out.checks.push_back({"every point satisfies f(x) = t", on_surface});
  return out;
}

Report cmd_automorphs(const RunConfig& cfg) {
  const auto autos = lattice::find_automorphs(cfg.form, cfg.height);
  const auto points = lattice::enumerate_points(cfg.form, cfg.t, cfg.radius);
  const auto partition = lattice::orbit_partition(points, autos);
  Report out;
  out.title = title(cfg, "form=" + cfg.form.to_string() + " H=" + std::to_string(cfg.height));
  Table gens{"generators", {"index", "matrix", "det", "preserves form"}, {}};
  bool verified = true;
  for (std::size_t i = 0; i < autos.generators.size(); ++i) {
    const auto& m = autos.generators[i];
    const bool ok = lattice::is_automorph(cfg.form, m) && lattice::determinant(m) == 1;
    verified = verified && ok;
    gens.rows.push_back({static_cast<std::uint64_t>(i), matrix_text(m), lattice::determinant(m),
                         lattice::is_automorph(cfg.form, m)});
  }
  Table classes{"orbits", {"class", "size", "first point"}, {}};
  for (std::size_t i = 0; i < partition.classes.size(); ++i) {
    classes.rows.push_back({static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(partition.classes[i].size()),
                            point_text(partition.classes[i].front())});
  }
  out.summary = {{"generators", static_cast<std::uint64_t>(autos.generators.size())},
                 {"points in ball", static_cast<std::uint64_t>(points.size())},
                 {"radius", cfg.radius},
                 {"classes (upper bound on orbits meeting the ball)", static_cast<std::uint64_t>(partition.class_count())}};
  out.tables.push_back(std::move(gens));
  out.tables.push_back(std::move(classes));
  out.checks.push_back({"every generator has det 1 and preserves f", verified});
  return out;
}

Report run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::kConstants: return cmd_constants(cfg);
    case Command::kLocal: return cmd_local(cfg);
    case Command::kEquidist: return cmd_equidist(cfg);
    case Command::kCensus: return cmd_census(cfg);
    case Command::kEnumerate: return cmd_enumerate(cfg);
    case Command::kAutomorphs: return cmd_automorphs(cfg);
  }
  throw ConfigError("unknown command");
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const ParseOutcome parsed = parse_command_line(argc, argv);
  if (parsed.exit_early) {
    (parsed.exit_code == 0 ? out : err) << parsed.message;
    return parsed.exit_code;
  }
  const RunConfig& cfg = parsed.config;
  Report report;
  try {
    report = run_command(cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  const std::string text = render(report, cfg);
  if (cfg.out_file.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out_file, std::ios::binary);
    if (!(file << text)) {
      err << "error: cannot write " << cfg.out_file << '\n';
      return 2;
    }
  }
  return report.exit_code();
}

}  // namespace sievelab::cli
