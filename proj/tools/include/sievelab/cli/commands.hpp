#pragma once

#include <iosfwd>

#include "sievelab/cli/report.hpp"
#include "sievelab/cli/run_config.hpp"

namespace sievelab::cli {

Report cmd_constants(const RunConfig& config);
Report cmd_local(const RunConfig& config);
Report cmd_equidist(const RunConfig& config);
Report cmd_census(const RunConfig& config);
Report cmd_enumerate(const RunConfig& config);
Report cmd_automorphs(const RunConfig& config);

Report run_command(const RunConfig& config);

/// The whole program: parse, run, render to out (or --out), diagnostics to
/// err. Returns the process exit code.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sievelab::cli
