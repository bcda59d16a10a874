#include "sievelab/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace sievelab::cli {

namespace {

using nlohmann::ordered_json;

std::string fmt10(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

ordered_json to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>) {
          return std::isfinite(v) ? ordered_json(round10(v)) : ordered_json(fmt10(v));
        } else {
          return ordered_json(v);
        }
      },
      c);
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = to_string(cfg.command);
  j["form"] = cfg.form.to_string();
  j["t"] = cfg.t;
  j["T"] = round10(cfg.T);
  j["c0"] = round10(cfg.c0);
  j["projection"] = local::to_string(cfg.projection);
  j["mode"] = thresholds::to_string(cfg.mode);
  j["dmax"] = cfg.d_max;
  j["r"] = cfg.r;
  j["pmax"] = cfg.p_max;
  j["height"] = cfg.height;
  j["radius"] = round10(cfg.radius);
  j["multiplicity"] = cfg.multiplicity;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string render_text(const Report& report) {
  std::ostringstream os;
  os << report.title << '\n';
  std::size_t key_width = 0;
  for (const auto& [k, v] : report.summary) key_width = std::max(key_width, k.size());
  for (const auto& [k, v] : report.summary) {
    os << "  " << k << std::string(key_width - k.size(), ' ') << " : " << format_cell(v) << '\n';
  }
  for (const Table& table : report.tables) {
    os << '\n' << table.name << '\n';
    std::vector<std::size_t> width(table.columns.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < width.size(); ++i) width[i] = table.columns[i].size();
    for (const auto& row : table.rows) {
      auto& out = cells.emplace_back();
      for (std::size_t i = 0; i < row.size(); ++i) {
        out.push_back(format_cell(row[i]));
        width[i] = std::max(width[i], out.back().size());
      }
    }
    auto line = [&](const std::vector<std::string>& items) {
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) os << " | ";
        os << items[i];
        if (i + 1 < items.size()) os << std::string(width[i] - items[i].size(), ' ');
      }
      os << '\n';
    };
    line(table.columns);
    std::size_t total = 0;
    for (auto w : width) total += w + 3;
    os << std::string(total > 3 ? total - 3 : 0, '-') << '\n';
    for (const auto& row : cells) line(row);
  }
  if (!report.checks.empty()) {
    os << "\nchecks\n";
    for (const Check& c : report.checks) os << "  " << (c.pass ? "PASS " : "FAIL ") << c.name << '\n';
    os << (report.all_pass() ? "all checks pass\n" : "some checks FAILED\n");
  }
  return os.str();
}

std::string render_csv(const Report& report) {
  if (report.tables.empty()) return {};
  const Table& table = report.tables.front();
  std::ostringstream os;
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << csv_escape(table.columns[i]);
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(format_cell(row[i]));
    os << '\n';
  }
  return os.str();
}

std::string render_json(const Report& report, const RunConfig& cfg) {
  ordered_json j;
  j["title"] = report.title;
  j["config"] = config_json(cfg);
  ordered_json summary = ordered_json::object();
  for (const auto& [k, v] : report.summary) summary[k] = to_json(v);
  j["summary"] = summary;
  ordered_json tables = ordered_json::object();
  for (const Table& table : report.tables) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
      ordered_json obj;
      for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = to_json(row[i]);
      rows.push_back(obj);
    }
    tables[table.name] = rows;
  }
  j["tables"] = tables;
  ordered_json checks = ordered_json::array();
  for (const Check& c : report.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}});
  j["checks"] = checks;
  j["pass"] = report.all_pass();
  return j.dump(2) + '\n';
}

}  // namespace

double round10(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(fmt10(x));
}

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<V, double>) {
          return fmt10(v);
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string render(const Report& report, const RunConfig& config) {
  switch (config.output) {
    case Output::kJson: return render_json(report, config);
    case Output::kCsv: return render_csv(report);
    case Output::kText: break;
  }
  return render_text(report);
}

}  // namespace sievelab::cli
