#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ddesim/models.hpp"
#include "ddesim/sweep.hpp"

namespace ddesim::cli {

/// Bad key, bad value or unreadable config file. Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AxisConfig {
  std::string parameter;
  double min = -0.05;
  double max = 0.05;
  int n_points = 41;
};

struct RunConfig {
  FullModelParams params;

  // populations
  double t_max = 0.0;  ///< <= 0: two periods of the analytic rho_A
  int n_times = 201;

  // g2 and timescale-map
  double tau_max = 0.0;  ///< <= 0: default_tau_max per point
  int n_samples = kDefaultG2Samples;

  // concurrence-map and timescale-map; axis2.parameter empty = 1-D sweep
  AxisConfig axis1{"delta0"};
  AxisConfig axis2{"delta1"};

  // validate
  int draws = 50;
  unsigned long long seed = 20240601ULL;

  // command line only
  std::filesystem::path out;
  int workers = 0;
  bool pi_units = false;

  /// Grid built from axis1/axis2 on top of params.
  [[nodiscard]] GridSpec grid(SweepObservables obs) const;
};

/// Every key accepted in a config file or by --set.
std::vector<std::string> config_keys();

/// Applies one `key = value` assignment. `where` names the source in error
/// messages ("config.ini:12", "--set").
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value,
                   std::string_view where);

/// Flat `key = value` text; '#' and ';' start comments. Later keys win.
void apply_config_text(RunConfig& cfg, std::string_view text, std::string_view source);

/// Defaults, then the file (if non-empty path), then each `key=value` override.
RunConfig parse_config(const std::filesystem::path& path,
                       const std::vector<std::string>& overrides);

/// Checks the resolved config as a whole. Throws ConfigError.
void validate_config(const RunConfig& cfg);

}  // namespace ddesim::cli
