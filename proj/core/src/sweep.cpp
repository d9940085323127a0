#include "ddesim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "ddesim/error.hpp"

namespace ddesim {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void Axis::validate() const {
  if (!is_real_parameter(parameter)) {
    throw ParameterError("axis parameter '" + parameter + "' is not a real model field");
  }
  if (n_points < 2) {
    throw ParameterError("axis '" + parameter + "': n_points must be >= 2");
  }
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw ParameterError("axis '" + parameter + "': need finite min < max");
  }
}

std::vector<double> Axis::values() const {
  std::vector<double> v(static_cast<std::size_t>(n_points));
  const double step = (max - min) / static_cast<double>(n_points - 1);
  for (int k = 0; k < n_points; ++k) v[static_cast<std::size_t>(k)] = min + step * k;
  v.back() = max;
  return v;
}

void GridSpec::validate() const {
  axis1.validate();
  if (axis2) {
    axis2->validate();
    if (axis2->parameter == axis1.parameter) {
      throw ParameterError("both axes sweep '" + axis1.parameter + "'");
    }
  }
  if (!observables.concurrence && !observables.g2_zero && !observables.timescale) {
    throw ParameterError("sweep requests no observables");
  }
  if (observables.timescale &&
      (g2_samples < kMinG2Samples || !std::has_single_bit(static_cast<unsigned>(g2_samples)))) {
    throw ParameterError("g2_samples must be a power of two >= " + std::to_string(kMinG2Samples));
  }
  if (!std::isfinite(tau_max)) throw ParameterError("tau_max is not finite");
  base.validate();
}

std::size_t GridSpec::cell_count() const {
  const auto n1 = static_cast<std::size_t>(axis1.n_points);
  return axis2 ? n1 * static_cast<std::size_t>(axis2->n_points) : n1;
}

const char* to_string(CellError e) {
  switch (e) {
    case CellError::None: return "";
    case CellError::DegenerateSteadyState: return "degenerate_steady_state";
    case CellError::EmitterDark: return "emitter_dark";
    case CellError::NoOscillation: return "no_oscillation";
    case CellError::Numerical: return "numerical";
    case CellError::Parameter: return "parameter";
  }
  return "unknown";
}

std::size_t SweepResult::failed_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.ok(); }));
}

SweepRow evaluate_cell(const FullModelParams& p, const SweepObservables& obs, int g2_samples,
                       double tau_max) {
  SweepRow row;
  const auto start = Clock::now();
  // Values computed before a failure are kept; nothing is filled in for the
  // stage that failed.
  try {
    const Liouvillian l = build_full_model(p).liouvillian();
    const DensityMatrix rho = steady_state(l);
    if (obs.concurrence) row.concurrence = concurrence(reduce_to_qubits(rho)).value;
    if (obs.timescale) {
      const double window = tau_max > 0.0 ? tau_max : default_tau_max(p);
      const CorrelationTrace trace = g2_trace(l, rho, window, g2_samples);
      if (obs.g2_zero) row.g2_zero = trace.g2_zero;
      const TimescaleResult ts = extract_timescale(trace, p.gamma_a_abs);
      row.period_native = ts.period_native;
      row.period_seconds = ts.period_seconds;
    } else if (obs.g2_zero) {
      row.g2_zero = g2_zero(l, rho);
    }
  } catch (const DegenerateSteadyState& e) {
    row.error = CellError::DegenerateSteadyState;
    row.message = e.what();
  } catch (const EmitterDark& e) {
    row.error = CellError::EmitterDark;
    row.message = e.what();
  } catch (const NoOscillation& e) {
    row.error = CellError::NoOscillation;
    row.message = e.what();
  } catch (const NumericalError& e) {
    row.error = CellError::Numerical;
    row.message = e.what();
  } catch (const std::invalid_argument& e) {
    row.error = CellError::Parameter;
    row.message = e.what();
  }
  row.wall_seconds = seconds_since(start);
  return row;
}

SweepResult run_sweep(const GridSpec& spec, int workers) {
  spec.validate();
  const auto start = Clock::now();
  const std::vector<double> v1 = spec.axis1.values();
  const std::vector<double> v2 = spec.axis2 ? spec.axis2->values() : std::vector<double>{};
  const std::size_t n2 = spec.axis2 ? v2.size() : 1;
  const std::size_t total = spec.cell_count();

  SweepResult result;
  result.spec = spec;
  result.n_max = spec.base.n_max;
  result.rows.resize(total);

  auto run_cell = [&](std::size_t idx) {
    FullModelParams p = spec.base;
    const std::size_t i1 = idx / n2;
    set_parameter(p, spec.axis1.parameter, v1[i1]);
    std::optional<double> x2;
    if (spec.axis2) {
      x2 = v2[idx % n2];
      set_parameter(p, spec.axis2->parameter, *x2);
    }
    SweepRow row = evaluate_cell(p, spec.observables, spec.g2_samples, spec.tau_max);
    row.x1 = v1[i1];
    row.x2 = x2;
    result.rows[idx] = std::move(row);
  };

  unsigned n_threads = workers > 0 ? static_cast<unsigned>(workers)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, total));
  if (n_threads <= 1) {
    for (std::size_t k = 0; k < total; ++k) run_cell(k);
  } else {
    // Each slot is written by exactly one thread, so ordering is fixed by
    // the index, not by completion time.
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < total; k = next++) run_cell(k);
      });
    }
  }
  result.wall_seconds = seconds_since(start);
  return result;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ParameterError("pearson: columns differ in length");
  if (x.size() < 2) throw ParameterError("pearson: need at least two samples");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mx;
    const double dy = y[k] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    throw NumericalError("pearson: a column has zero variance, correlation is undefined");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double correlation_stats(const SweepResult& result) {
  std::vector<double> g2;
  std::vector<double> c;
  for (const auto& row : result.rows) {
    if (!row.ok() || !row.g2_zero || !row.concurrence) continue;
    g2.push_back(*row.g2_zero);
    c.push_back(*row.concurrence);
  }
  if (g2.size() < kMinCorrelationCells) {
    throw NumericalError("correlation_stats: only " + std::to_string(g2.size()) +
                         " valid cells with both concurrence and g2(0), need " +
                         std::to_string(kMinCorrelationCells));
  }
  return pearson(g2, c);
}

}  // namespace ddesim
