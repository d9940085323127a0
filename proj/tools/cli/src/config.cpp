#include "ddesim/cli/config.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ddesim/error.hpp"

namespace ddesim::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::string_view where, std::string_view key, const std::string& what) {
  throw ConfigError(std::string(where) + ": key '" + std::string(key) + "': " + what);
}

double to_real(std::string_view key, std::string_view value, std::string_view where) {
  double v = 0.0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    fail(where, key, "'" + std::string(value) + "' is not a finite number");
  }
  return v;
}

long long to_integer(std::string_view key, std::string_view value, std::string_view where) {
  long long v = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    fail(where, key, "'" + std::string(value) + "' is not an integer");
  }
  return v;
}

int to_int(std::string_view key, std::string_view value, std::string_view where) {
  const long long v = to_integer(key, value, where);
  if (v < -1'000'000'000LL || v > 1'000'000'000LL) fail(where, key, "value out of range");
  return static_cast<int>(v);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view, std::string_view, std::string_view)>;

void add_axis(std::map<std::string, Setter, std::less<>>& m, const std::string& prefix,
              AxisConfig RunConfig::*axis) {
  m[prefix] = [axis](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
    const std::string name = lower(v);
    if (name.empty() || name == "none") {
      (c.*axis).parameter.clear();
      return;
    }
    if (!is_real_parameter(name)) fail(w, k, "'" + name + "' is not a real model parameter");
    (c.*axis).parameter = name;
  };
  m[prefix + "_min"] = [axis](RunConfig& c, std::string_view k, std::string_view v,
                              std::string_view w) { (c.*axis).min = to_real(k, v, w); };
  m[prefix + "_max"] = [axis](RunConfig& c, std::string_view k, std::string_view v,
                              std::string_view w) { (c.*axis).max = to_real(k, v, w); };
  m[prefix + "_points"] = [axis](RunConfig& c, std::string_view k, std::string_view v,
                                 std::string_view w) { (c.*axis).n_points = to_int(k, v, w); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const auto table = [] {
    std::map<std::string, Setter, std::less<>> m;
    for (auto name : real_parameter_names()) {
      m[std::string(name)] = [](RunConfig& c, std::string_view k, std::string_view v,
                                std::string_view w) {
        set_parameter(c.params, k, to_real(k, v, w));
      };
    }
    m["n_max"] = [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      c.params.n_max = to_int(k, v, w);
    };
    m["relaxation"] = [](RunConfig& c, std::string_view k, std::string_view v,
                         std::string_view w) {
      const std::string s = lower(v);
      if (s == "lower") {
        c.params.relaxation = RelaxationOperator::Lower;
      } else if (s == "raise") {
        c.params.relaxation = RelaxationOperator::Raise;
      } else {
        fail(w, k, "expected 'lower' or 'raise', got '" + std::string(v) + "'");
      }
    };
    m["t_max"] = [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      c.t_max = to_real(k, v, w);
    };
    m["n_times"] = [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      c.n_times = to_int(k, v, w);
    };
    m["tau_max"] = [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      c.tau_max = to_real(k, v, w);
    };
    m["n_samples"] = [](RunConfig& c, std::string_view k, std::string_view v,
                        std::string_view w) { c.n_samples = to_int(k, v, w); };
    m["draws"] = [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      c.draws = to_int(k, v, w);
    };
    m["seed"] = [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      const long long s = to_integer(k, v, w);
      if (s < 0) fail(w, k, "seed must be >= 0");
      c.seed = static_cast<unsigned long long>(s);
    };
    add_axis(m, "axis1", &RunConfig::axis1);
    add_axis(m, "axis2", &RunConfig::axis2);
    return m;
  }();
  return table;
}

}  // namespace

GridSpec RunConfig::grid(SweepObservables obs) const {
  GridSpec spec;
  spec.axis1 = Axis{axis1.parameter, axis1.min, axis1.max, axis1.n_points};
  if (!axis2.parameter.empty()) {
    spec.axis2 = Axis{axis2.parameter, axis2.min, axis2.max, axis2.n_points};
  }
  spec.base = params;
  spec.observables = obs;
  spec.g2_samples = n_samples;
  spec.tau_max = tau_max;
  return spec;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value,
                   std::string_view where) {
  const std::string k = lower(trim(key));
  const std::string_view v = trim(value);
  const auto& table = setters();
  const auto it = table.find(k);
  if (it == table.end()) fail(where, k, "unknown key");
  if (v.empty()) fail(where, k, "missing value");
  it->second(cfg, k, v, where);
}

void apply_config_text(RunConfig& cfg, std::string_view text, std::string_view source) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (const auto c = body.find_first_of("#;"); c != std::string_view::npos) {
      body = body.substr(0, c);
    }
    body = trim(body);
    if (body.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(lineno);
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected 'key = value', got '" + std::string(body) + "'");
    }
    apply_setting(cfg, body.substr(0, eq), body.substr(eq + 1), where);
  }
}

RunConfig parse_config(const std::filesystem::path& path,
                       const std::vector<std::string>& overrides) {
  RunConfig cfg;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_text(cfg, text.str(), path.string());
  }
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--set: expected key=value, got '" + item + "'");
    }
    apply_setting(cfg, std::string_view(item).substr(0, eq),
                  std::string_view(item).substr(eq + 1), "--set");
  }
  return cfg;
}

void validate_config(const RunConfig& cfg) {
  try {
    cfg.params.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  if (cfg.n_times < 2) throw ConfigError("key 'n_times': must be >= 2");
  if (cfg.n_samples < kMinG2Samples || !std::has_single_bit(static_cast<unsigned>(cfg.n_samples))) {
    throw ConfigError("key 'n_samples': must be a power of two >= " +
                      std::to_string(kMinG2Samples));
  }
  if (cfg.draws < 1) throw ConfigError("key 'draws': must be >= 1");
  if (cfg.workers < 0) throw ConfigError("--workers must be >= 0");
  if (cfg.axis1.parameter.empty()) throw ConfigError("key 'axis1': a sweep needs a first axis");
  for (const auto* a : {&cfg.axis1, &cfg.axis2}) {
    if (a->parameter.empty()) continue;
    try {
      Axis{a->parameter, a->min, a->max, a->n_points}.validate();
    } catch (const ParameterError& e) {
      throw ConfigError(e.what());
    }
  }
  if (cfg.axis1.parameter == cfg.axis2.parameter) {
    throw ConfigError("keys 'axis1' and 'axis2' name the same parameter");
  }
}

}  // namespace ddesim::cli
