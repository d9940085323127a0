#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ddesim/cli/config.hpp"

namespace ddesim::cli {

/// "%.12g"; non-finite values print as nan/inf.
std::string format_number(double v);
std::string format_number(const std::optional<double>& v);

/// Comment lines, a header, then rows. Writes ',' separated, '#' comments.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void comment(std::string line);
  void add_row(std::vector<std::string> cells);

  [[nodiscard]] const std::vector<std::string>& header() const { return header_; }
  [[nodiscard]] std::size_t size() const { return rows_.size(); }
  void write(std::ostream& os) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

/// Resolved model parameters as a JSON object.
nlohmann::json params_json(const FullModelParams& p);

/// Sidecar path next to a CSV: data.csv -> data.json.
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// Writes the CSV (stdout when `csv` is "-") and, for file output, the
/// sidecar with `meta` merged into the standard fields.
void emit(const CsvTable& table, const std::filesystem::path& csv, const std::string& command,
          const RunConfig& cfg, double wall_seconds, const nlohmann::json& meta);

const char* tool_version();

}  // namespace ddesim::cli
