#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sievelab/errors.hpp"
#include "sievelab/localdata.hpp"
#include "sievelab/quadforms.hpp"
#include "sievelab/thresholds.hpp"

namespace sievelab::cli {

/// Bad flags, bad config files or inputs that violate a module precondition.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Command { kConstants, kLocal, kEquidist, kCensus, kEnumerate, kAutomorphs };
std::string to_string(Command c);

enum class Output { kText, kJson, kCsv };
std::string to_string(Output o);

struct RunConfig {
  Command command = Command::kConstants;
  quad::TernaryForm form = quad::TernaryForm::diagonal(1, 1, -3);
  std::int64_t t = 1;
  double T = 1000;
  double c0 = 2;
  local::Variant projection = local::Variant::kX1;
  thresholds::TauMode mode = thresholds::TauMode::kUnconditional;
  std::uint64_t d_max = 200;
  int r = 6;
  std::uint64_t p_max = 97;
  int height = 2;      // automorph entry bound
  double radius = 10;  // ball for the orbit partition
  bool multiplicity = true;
  Output output = Output::kText;
  std::string out_file;
};

struct ParseOutcome {
  RunConfig config;
  bool exit_early = false;  // --help or --version was handled
  int exit_code = 0;
  std::string message;      // help text or error message
};

/// Parses argv. Flags may also come from --config FILE (key=value lines named
/// like the long flags); flags on the command line win. Never throws:
/// failures come back as exit_early with exit code 2.
ParseOutcome parse_command_line(int argc, const char* const* argv);

/// Cross-field checks against the module preconditions. Throws ConfigError.
void validate(const RunConfig& config);

}  // namespace sievelab::cli
