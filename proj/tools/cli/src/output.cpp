#include "ddesim/cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace ddesim::cli {

#ifndef DDESIM_VERSION
#define DDESIM_VERSION "0.0.0"
#endif

const char* tool_version() { return DDESIM_VERSION; }

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::comment(std::string line) { comments_.push_back(std::move(line)); }

void CsvTable::add_row(std::vector<std::string> cells) {
  cells.resize(header_.size());
  rows_.push_back(std::move(cells));
}

void CsvTable::write(std::ostream& os) const {
  auto join = [&os](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) os << ',';
      os << cells[k];
    }
    os << '\n';
  };
  for (const auto& c : comments_) os << "# " << c << '\n';
  join(header_);
  for (const auto& r : rows_) join(r);
}

nlohmann::json params_json(const FullModelParams& p) {
  nlohmann::json j = nlohmann::json::object();
  for (auto name : real_parameter_names()) j[std::string(name)] = get_parameter(p, name);
  j["n_max"] = p.n_max;
  j["relaxation"] = p.relaxation == RelaxationOperator::Lower ? "lower" : "raise";
  return j;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto side = csv;
  side.replace_extension(".json");
  if (side == csv) side += ".json";
  return side;
}

void emit(const CsvTable& table, const std::filesystem::path& csv, const std::string& command,
          const RunConfig& cfg, double wall_seconds, const nlohmann::json& meta) {
  if (csv == "-") {
    table.write(std::cout);
    std::cout.flush();
    return;
  }
  {
    std::ofstream out(csv);
    if (!out) throw ConfigError("cannot write output file '" + csv.string() + "'");
    table.write(out);
    if (!out) throw ConfigError("write failed for '" + csv.string() + "'");
  }
  nlohmann::json side = {
      {"tool", "ddesim"},
      {"version", tool_version()},
      {"command", command},
      {"csv", csv.filename().string()},
      {"rows", table.size()},
      {"columns", table.header()},
      {"parameters", params_json(cfg.params)},
      {"n_max", cfg.params.n_max},
      {"wall_clock_seconds", wall_seconds},
  };
  side.update(meta);
  const auto path = sidecar_path(csv);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write sidecar '" + path.string() + "'");
  out << side.dump(2) << '\n';
}

}  // namespace ddesim::cli
