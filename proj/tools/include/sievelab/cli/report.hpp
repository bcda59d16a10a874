#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sievelab/cli/run_config.hpp"

namespace sievelab::cli {

/// One printable value. Doubles render with 10 significant digits.
using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t, bool>;

std::string format_cell(const Cell& c);
/// Same digits as the text output, as a double.
double round10(double x);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Check {
  std::string name;
  bool pass = false;
};

struct Report {
  std::string title;
  std::vector<std::pair<std::string, Cell>> summary;
  std::vector<Table> tables;
  std::vector<Check> checks;

  bool all_pass() const;
  /// 0 when every check passes, 1 otherwise.
  int exit_code() const { return all_pass() ? 0 : 1; }
};

/// text: summary, aligned tables and checks. csv: the first table only.
/// json: everything, with the config echoed.
std::string render(const Report& report, const RunConfig& config);

}  // namespace sievelab::cli
