#include "ddesim/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <limits>
#include <optional>
#include <random>

#include "ddesim/error.hpp"
#include "ddesim/observables.hpp"
#include "ddesim/sweep.hpp"
#include "ddesim/truncation.hpp"

namespace ddesim::cli {

namespace {

constexpr const char* kUnitsNote =
    "energies and rates in units of gamma_a; times in 1/gamma_a unless suffixed _seconds";

std::string fmt(double v) { return format_number(v); }

void stamp(CsvTable& t, const std::string& command) {
  t.comment(std::string("ddesim ") + tool_version() + " " + command);
  t.comment(kUnitsNote);
}

void describe_params(CsvTable& t, const FullModelParams& p) {
  std::string line = "params:";
  for (auto name : real_parameter_names()) {
    line += " " + std::string(name) + "=" + fmt(get_parameter(p, name));
  }
  line += " n_max=" + std::to_string(p.n_max);
  line += std::string(" relaxation=") +
          (p.relaxation == RelaxationOperator::Lower ? "lower" : "raise");
  t.comment(line);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (n - 1);
  v.back() = hi;
  return v;
}

CsvTable sweep_table(const SweepResult& r, const std::vector<std::string>& value_columns,
                     bool pi_units) {
  std::vector<std::string> header{r.spec.axis1.parameter};
  if (r.spec.axis2) header.push_back(r.spec.axis2->parameter);
  for (const auto& c : value_columns) header.push_back(c);
  if (pi_units) header.push_back("period_pi_units");
  header.push_back("error");
  CsvTable t(header);
  for (const auto& row : r.rows) {
    std::vector<std::string> cells{fmt(row.x1)};
    if (row.x2) cells.push_back(fmt(*row.x2));
    for (const auto& c : value_columns) {
      if (c == "concurrence") cells.push_back(format_number(row.concurrence));
      if (c == "g2_zero") cells.push_back(format_number(row.g2_zero));
      if (c == "period_native") cells.push_back(format_number(row.period_native));
      if (c == "period_seconds") cells.push_back(format_number(row.period_seconds));
    }
    if (pi_units) {
      cells.push_back(row.period_native ? fmt(*row.period_native * std::numbers::pi)
                                        : std::string());
    }
    cells.push_back(to_string(row.error));
    t.add_row(std::move(cells));
  }
  return t;
}

nlohmann::json sweep_meta(const SweepResult& r) {
  auto axis = [](const Axis& a) {
    return nlohmann::json{{"parameter", a.parameter}, {"min", a.min}, {"max", a.max},
                          {"n_points", a.n_points}};
  };
  nlohmann::json grid = {{"axis1", axis(r.spec.axis1)}};
  grid["axis2"] = r.spec.axis2 ? axis(*r.spec.axis2) : nlohmann::json(nullptr);
  std::vector<double> cell_wall;
  cell_wall.reserve(r.rows.size());
  for (const auto& row : r.rows) cell_wall.push_back(row.wall_seconds);
  return {{"grid", grid},
          {"cells", r.rows.size()},
          {"failed_cells", r.failed_count()},
          {"cell_wall_seconds", cell_wall}};
}

struct Check {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

FullModelParams random_draw(const FullModelParams& base, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> detuning(-0.1, 0.1);
  std::uniform_real_distribution<double> coupling(0.005, 0.1);
  FullModelParams p = base;
  p.delta0 = detuning(rng);
  p.delta1 = detuning(rng);
  p.delta_a = detuning(rng);
  p.g0 = coupling(rng);
  p.g1 = coupling(rng);
  p.eta0 = coupling(rng);
  p.eta1 = coupling(rng);
  p.eta_a = 0.0;
  return p;
}

}  // namespace

CommandResult cmd_populations(const RunConfig& cfg) {
  const FullModelParams& p = cfg.params;
  const EffectiveParams e = adiabatic_eliminate(p);
  const double delta_minus = 0.5 * (e.dtilde0 - e.dtilde1);
  const double eta = 0.5 * (e.etatilde0 + e.etatilde1);
  const double omega = rabi_frequency(delta_minus, eta);
  if (!(omega > 0.0)) {
    throw ParameterError("populations: zero Rabi frequency, the analytic reference is undefined");
  }
  const double t_max = cfg.t_max > 0.0 ? cfg.t_max : 2.0 * std::numbers::pi / omega;
  const std::vector<double> times = linspace(0.0, t_max, cfg.n_times);

  const FullModel model = build_full_model(p);
  const Liouvillian l = model.liouvillian();
  const auto rho0 = DensityMatrix::basis(model.layout, 0);
  const EvolveResult evo = evolve(l, rho0, times);

  CsvTable t({"t", "t_seconds", "rho_E", "rho_S", "rho_A", "rho_G", "analytic_E", "analytic_S",
              "analytic_A", "analytic_G"});
  stamp(t, "populations");
  describe_params(t, p);
  t.comment("start |gg>|0>; analytic columns: dissipationless effective model, delta_minus=" +
            fmt(delta_minus) + " eta=" + fmt(eta) + " omega=" + fmt(omega));
  for (std::size_t k = 0; k < times.size(); ++k) {
    const DickePopulations num = dicke_populations(reduce_to_qubits(evo.states[k]));
    const DickePopulations ana = analytic_populations(delta_minus, eta, times[k]);
    t.add_row({fmt(times[k]), fmt(times[k] / p.gamma_a_abs), fmt(num.e), fmt(num.s), fmt(num.a),
               fmt(num.g), fmt(ana.e), fmt(ana.s), fmt(ana.a), fmt(ana.g)});
  }
  CommandResult r{std::move(t)};
  r.meta = {{"t_max", t_max},
            {"n_times", cfg.n_times},
            {"rabi_frequency", omega},
            {"propagator", evo.method == Propagator::Spectral ? "spectral" : "integrator"},
            {"max_trace_drift", evo.max_trace_drift}};
  return r;
}

CommandResult cmd_steady(const RunConfig& cfg) {
  const FullModel model = build_full_model(cfg.params);
  const Liouvillian l = model.liouvillian();
  const DensityMatrix rho = steady_state(l);
  const DensityMatrix rho2 = reduce_to_qubits(rho);
  const ConcurrenceResult c = concurrence(rho2);
  const DickePopulations pops = dicke_populations(rho2);

  CsvTable t({"quantity", "real", "imag"});
  stamp(t, "steady");
  describe_params(t, cfg.params);
  t.comment("rho_<row>_<col>: reduced two-qubit steady state, basis gg ge eg ee (qubit0 first)");
  static const char* labels[4] = {"gg", "ge", "eg", "ee"};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const auto z = rho2.matrix()(i, j);
      t.add_row({std::string("rho_") + labels[i] + "_" + labels[j], fmt(z.real()), fmt(z.imag())});
    }
  }
  t.add_row({"pop_E", fmt(pops.e), "0"});
  t.add_row({"pop_S", fmt(pops.s), "0"});
  t.add_row({"pop_A", fmt(pops.a), "0"});
  t.add_row({"pop_G", fmt(pops.g), "0"});
  t.add_row({"concurrence", fmt(c.value), "0"});
  const auto a = embed(boson_destroy(cfg.params.n_max), 2, model.layout);
  t.add_row({"boson_occupation", fmt(rho.expectation(a.adjoint() * a)), "0"});
  t.add_row({"residual", fmt(max_abs(apply_liouvillian(l, rho))), "0"});
  t.add_row({"min_eigenvalue", fmt(rho.min_eigenvalue()), "0"});
  std::optional<double> g2;
  try {
    g2 = g2_zero(l, rho);
  } catch (const EmitterDark&) {
  }
  t.add_row({"g2_zero", format_number(g2), g2 ? "0" : ""});

  CommandResult r{std::move(t)};
  r.meta = {{"concurrence", c.value},
            {"weak_coupling_advisory", cfg.params.weak_coupling_advisory()}};
  return r;
}

CommandResult cmd_concurrence_map(const RunConfig& cfg) {
  const SweepResult sweep = run_sweep(cfg.grid({true, true, false}), cfg.workers);
  CsvTable t = sweep_table(sweep, {"concurrence", "g2_zero"}, false);
  stamp(t, "concurrence-map");
  describe_params(t, cfg.params);
  CommandResult r{std::move(t)};
  r.meta = sweep_meta(sweep);
  try {
    r.meta["pearson_g2_concurrence"] = correlation_stats(sweep);
  } catch (const NumericalError&) {
    r.meta["pearson_g2_concurrence"] = nullptr;
  }
  return r;
}

CommandResult cmd_g2(const RunConfig& cfg) {
  const FullModel model = build_full_model(cfg.params);
  const Liouvillian l = model.liouvillian();
  const DensityMatrix rho = steady_state(l);
  const double tau_max = cfg.tau_max > 0.0 ? cfg.tau_max : default_tau_max(cfg.params);
  const CorrelationTrace trace = g2_trace(l, rho, tau_max, cfg.n_samples);

  CsvTable t({"tau", "tau_seconds", "raw", "normalized"});
  stamp(t, "g2");
  describe_params(t, cfg.params);
  t.comment("asymptote=" + fmt(trace.asymptote) + " g2_zero=" + fmt(trace.g2_zero) +
            " tail_deviation=" + fmt(trace.tail_deviation()));
  for (std::size_t k = 0; k < trace.taus.size(); ++k) {
    t.add_row({fmt(trace.taus[k]), fmt(trace.taus[k] / cfg.params.gamma_a_abs), fmt(trace.raw[k]),
               fmt(trace.normalized[k])});
  }
  CommandResult r{std::move(t)};
  r.meta = {{"tau_max", tau_max},
            {"n_samples", cfg.n_samples},
            {"asymptote", trace.asymptote},
            {"g2_zero", trace.g2_zero},
            {"tail_deviation", trace.tail_deviation()},
            {"dark_emitters", trace.dark_emitters}};
  return r;
}

CommandResult cmd_timescale_map(const RunConfig& cfg) {
  const SweepResult sweep = run_sweep(cfg.grid({false, true, true}), cfg.workers);
  CsvTable t = sweep_table(sweep, {"g2_zero", "period_native", "period_seconds"}, cfg.pi_units);
  stamp(t, "timescale-map");
  describe_params(t, cfg.params);
  if (cfg.pi_units) t.comment("period_pi_units: period in units of 1/(pi gamma_a)");
  CommandResult r{std::move(t)};
  r.meta = sweep_meta(sweep);
  r.meta["pi_units"] = cfg.pi_units;
  r.meta["n_samples"] = cfg.n_samples;
  r.meta["tau_max"] = cfg.tau_max;
  return r;
}

CommandResult cmd_validate(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const std::vector<double> times = linspace(0.0, 200.0, 41);
  constexpr int kIntegratorCases = 20;

  double residual = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  double max_real = -std::numeric_limits<double>::infinity();
  double drift = 0.0;
  double min_evolved_eig = std::numeric_limits<double>::infinity();
  double path_gap = 0.0;
  int failures = 0;
  for (int d = 0; d < cfg.draws; ++d) {
    const FullModelParams p = random_draw(cfg.params, rng);
    try {
      const FullModel model = build_full_model(p);
      const Liouvillian l = model.liouvillian();
      for (Eigen::Index k = 0; k < l.spectrum().eigenvalues.size(); ++k) {
        max_real = std::max(max_real, l.spectrum().eigenvalues(k).real());
      }
      const DensityMatrix rho = steady_state(l);
      residual = std::max(residual, max_abs(apply_liouvillian(l, rho)));
      min_eig = std::min(min_eig, rho.min_eigenvalue());

      const auto rho0 = DensityMatrix::basis(model.layout, 0);
      const EvolveResult spec = evolve(l, rho0, times);
      drift = std::max(drift, spec.max_trace_drift);
      for (const auto& s : spec.states) min_evolved_eig = std::min(min_evolved_eig, s.min_eigenvalue());
      if (d < kIntegratorCases) {
        const EvolveResult integ = evolve_integrated(l, rho0, times);
        for (std::size_t k = 0; k < times.size(); ++k) {
          path_gap = std::max(path_gap, max_abs(spec.states[k].matrix() - integ.states[k].matrix()));
        }
      }
    } catch (const std::exception&) {
      ++failures;
    }
  }

  const TruncationDelta trunc = truncation_deltas(cfg.params, cfg.params.n_max);
  const double c_ab = concurrence(reduce_to_qubits(steady_state(build_full_model(cfg.params).liouvillian()))).value;
  const double c_ba = concurrence(reduce_to_qubits(
      steady_state(build_full_model(cfg.params.with_qubits_swapped()).liouvillian()))).value;

  const std::vector<Check> checks = {
      {"draw_failures", static_cast<double>(failures), 0.0, failures == 0},
      {"steady_residual_max", residual, kSteadyStateResidualTol, residual < kSteadyStateResidualTol},
      {"steady_min_eigenvalue", min_eig, -1e-9, min_eig >= -1e-9},
      {"eigenvalue_real_part_max", max_real, 1e-10, max_real <= 1e-10},
      {"propagation_trace_drift_max", drift, kMaxPropagationDrift, drift <= kMaxPropagationDrift},
      {"evolved_min_eigenvalue", min_evolved_eig, -1e-8, min_evolved_eig >= -1e-8},
      {"spectral_vs_integrator_max", path_gap, 1e-6, path_gap <= 1e-6},
      {"truncation_delta_concurrence", trunc.concurrence, 1e-6, trunc.concurrence < 1e-6},
      {"truncation_delta_g2_zero", trunc.g2_zero, 1e-6, trunc.g2_zero < 1e-6},
      {"qubit_exchange_concurrence", std::abs(c_ab - c_ba), 1e-8, std::abs(c_ab - c_ba) <= 1e-8},
  };

  CsvTable t({"check", "value", "threshold", "pass"});
  stamp(t, "validate");
  describe_params(t, cfg.params);
  t.comment("random draws=" + std::to_string(cfg.draws) + " seed=" + std::to_string(cfg.seed) +
            " box: |delta0|,|delta1|,|delta_a| <= 0.1, g and eta in [0.005, 0.1]");
  bool all = true;
  nlohmann::json results = nlohmann::json::object();
  for (const auto& c : checks) {
    t.add_row({c.name, fmt(c.value), fmt(c.threshold), c.pass ? "1" : "0"});
    results[c.name] = c.pass;
    all = all && c.pass;
  }
  CommandResult r{std::move(t)};
  r.meta = {{"draws", cfg.draws}, {"seed", cfg.seed}, {"checks", results}, {"passed", all}};
  r.exit_code = all ? kExitOk : kExitValidation;
  return r;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "populations", "steady", "concurrence-map", "g2", "timescale-map", "validate"};
  return names;
}

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& err) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  try {
    validate_config(cfg);
    CommandResult r = [&] {
      if (name == "populations") return cmd_populations(cfg);
      if (name == "steady") return cmd_steady(cfg);
      if (name == "concurrence-map") return cmd_concurrence_map(cfg);
      if (name == "g2") return cmd_g2(cfg);
      if (name == "timescale-map") return cmd_timescale_map(cfg);
      if (name == "validate") return cmd_validate(cfg);
      throw ConfigError("unknown command '" + name + "'");
    }();
    const double wall = std::chrono::duration<double>(Clock::now() - start).count();
    const auto out = cfg.out.empty() ? std::filesystem::path(name + ".csv") : cfg.out;
    emit(r.table, out, name, cfg, wall, r.meta);
    if (r.exit_code == kExitValidation) err << "ddesim: validation failed, see " << out << '\n';
    return r.exit_code;
  } catch (const ConfigError& e) {
    err << "ddesim: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    // ParameterError and DimensionError: the inputs are at fault.
    err << "ddesim: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "ddesim: numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace ddesim::cli
