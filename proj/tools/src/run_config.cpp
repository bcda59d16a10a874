#include "sievelab/cli/run_config.hpp"

#include <CLI11.hpp>
#include <map>


namespace sievelab::cli {

std::string to_string(Command c) {
  switch (c) {
    case Command::kConstants: return "constants";
    case Command::kLocal: return "local";
    case Command::kEquidist: return "equidist";
    case Command::kCensus: return "census";
    case Command::kEnumerate: return "enumerate";
    case Command::kAutomorphs: return "automorphs";
  }
  return "?";
}

std::string to_string(Output o) {
  switch (o) {
    case Output::kText: return "text";
    case Output::kJson: return "json";
    case Output::kCsv: return "csv";
  }
  return "?";
}

namespace {

constexpr double kMaxScale = 20000;  // T beyond this blows the enumeration budget

bool needs_sequence(Command c) {
  return c == Command::kEquidist || c == Command::kCensus || c == Command::kEnumerate;
}

}  // namespace

void validate(const RunConfig& cfg) {
  const auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  const bool degenerate = quad::det_form(cfg.form).value == 0;
  if (cfg.command != Command::kConstants && degenerate) {
    fail("--form " + cfg.form.to_string() + " is degenerate (det = 0); pick a nondegenerate ternary form");
  }
  if (needs_sequence(cfg.command) || cfg.command == Command::kAutomorphs) {
    if (cfg.t == 0) fail("--t must be nonzero");
  }
  if (needs_sequence(cfg.command)) {
    if (!(cfg.T >= 10)) fail("--T must be at least 10");
    if (!(cfg.c0 > 1)) fail("--c0 must exceed 1");
    const double scale = cfg.command == Command::kEquidist ? 2 * cfg.T : cfg.T;
    if (scale > kMaxScale) {
      fail("--T " + std::to_string(cfg.T) + " needs an enumeration beyond the guard (largest scale " +
           std::to_string(static_cast<int>(kMaxScale)) + (cfg.command == Command::kEquidist ? ", and equidist also runs 2T)" : ")"));
    }
  }
  if (cfg.command == Command::kLocal) {
    if (cfg.p_max < 7) fail("--pmax must be at least 7");
    if (cfg.p_max > local::kMaxTablePrime) {
      fail("--pmax " + std::to_string(cfg.p_max) + " exceeds the resource guard of " +
           std::to_string(local::kMaxTablePrime));
    }
  }
  if (cfg.command == Command::kEquidist) {
    if (cfg.d_max < 1) fail("--dmax must be at least 1");
    if (cfg.d_max > local::kMaxTablePrime) {
      fail("--dmax " + std::to_string(cfg.d_max) + " exceeds the density-table guard of " +
           std::to_string(local::kMaxTablePrime));
    }
  }
  if (cfg.command == Command::kCensus && cfg.r < 0) fail("--r must be nonnegative");
  if (cfg.command == Command::kAutomorphs) {
    if (cfg.height < 0 || cfg.height > 4) fail("--height must lie in [0, 4]");
    if (!(cfg.radius >= 0) || cfg.radius > 200) fail("--radius must lie in [0, 200]");
  }
}

ParseOutcome parse_command_line(int argc, const char* const* argv) {
  ParseOutcome outcome;
  RunConfig& cfg = outcome.config;

  CLI::App app{"Weighted-sieve constants, local densities and lattice-point experiments for ternary quadrics",
               "sievelab"};
  app.set_version_flag("--version", "sievelab 0.1.0");
  app.set_config("--config", "", "key=value file mirroring the long flag names; flags win");
  app.require_subcommand(1);
  app.fallthrough();

  std::string form_text = cfg.form.to_string();
  std::string projection_text = "x1";
  std::string mode_text = "unconditional";
  std::string output_text = "text";
  bool no_multiplicity = false;

  app.add_option("--form", form_text, "a11,a22,a33,a12,a13,a23")->capture_default_str();
  app.add_option("--t", cfg.t, "right-hand side t of f(x) = t")->capture_default_str();
  app.add_option("--T", cfg.T, "scale T of the weight")->capture_default_str();
  app.add_option("--c0", cfg.c0, "weight shape c0 > 1")->capture_default_str();
  app.add_option("--projection", projection_text, "x1 | x1x2 | x1x2x3")
      ->check(CLI::IsMember({"x1", "x1x2", "x1x2x3"}))
      ->capture_default_str();
  app.add_option("--mode", mode_text, "unconditional | selberg")
      ->check(CLI::IsMember({"unconditional", "selberg"}))
      ->capture_default_str();
  app.add_option("--dmax", cfg.d_max, "largest modulus d")->capture_default_str();
  app.add_option("--r", cfg.r, "almost-prime order r")->capture_default_str();
  app.add_option("--pmax", cfg.p_max, "largest prime in the density table")->capture_default_str();
  app.add_option("--height", cfg.height, "automorph entry bound")->capture_default_str();
  app.add_option("--radius", cfg.radius, "ball radius for the orbit partition")->capture_default_str();
  app.add_flag("--no-multiplicity", no_multiplicity, "count distinct prime factors only");
  app.add_option("--output", output_text, "text | json | csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out_file, "write the report here instead of stdout");

  const std::map<std::string, Command> commands{
      {"constants", Command::kConstants}, {"local", Command::kLocal},         {"equidist", Command::kEquidist},
      {"census", Command::kCensus},       {"enumerate", Command::kEnumerate}, {"automorphs", Command::kAutomorphs}};
  const std::map<std::string, std::string> blurbs{
      {"constants", "reproduce the sieve thresholds and compare with the reference figures"},
      {"local", "local densities mod p, bad primes and the point-count formula check"},
      {"equidist", "residuals R_d, the level statistic and the 2T trend flag"},
      {"census", "weighted almost-prime census of the sequence"},
      {"enumerate", "integer points on f = t in the weight support, as CSV"},
      {"automorphs", "small integral automorphs and the induced orbit partition"}};
  for (const auto& [name, blurb] : blurbs) app.add_subcommand(name, blurb);

  try {
    app.parse(argc, argv);
    cfg.command = commands.at(app.get_subcommands().front()->get_name());
    cfg.form = quad::TernaryForm::parse(form_text);
    cfg.projection = local::parse_variant(projection_text);
    cfg.mode = thresholds::parse_tau_mode(mode_text);
    cfg.output = output_text == "json" ? Output::kJson : output_text == "csv" ? Output::kCsv : Output::kText;
    cfg.multiplicity = !no_multiplicity;
    validate(cfg);
  } catch (const CLI::Success& e) {
    outcome.exit_early = true;
    outcome.exit_code = 0;
    outcome.message = e.get_name() == "CallForVersion" ? std::string(e.what()) + "\n" : app.help();
  } catch (const CLI::ParseError& e) {
    outcome.exit_early = true;
    outcome.exit_code = 2;
    outcome.message = std::string("config error: ") + e.what() + "\n";
  } catch (const Error& e) {
    outcome.exit_early = true;
    outcome.exit_code = 2;
    outcome.message = std::string("config error: ") + e.what() + "\n";
  }
  return outcome;
}

}  // namespace sievelab::cli
