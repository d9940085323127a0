#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddesim/models.hpp"
#include "ddesim/observables.hpp"

namespace ddesim {

/// Inclusive linear axis over one real FullModelParams field.
struct Axis {
  std::string parameter;
  double min = 0.0;
  double max = 0.0;
  int n_points = 2;

  void validate() const;
  [[nodiscard]] std::vector<double> values() const;

  friend bool operator==(const Axis&, const Axis&) = default;
};

struct SweepObservables {
  bool concurrence = true;
  bool g2_zero = true;
  bool timescale = false;

  friend bool operator==(const SweepObservables&, const SweepObservables&) = default;
};

struct GridSpec {
  Axis axis1;
  std::optional<Axis> axis2;
  FullModelParams base;
  SweepObservables observables;
  /// Only used when observables.timescale is set.
  int g2_samples = kDefaultG2Samples;
  /// <= 0 picks default_tau_max per cell.
  double tau_max = 0.0;

  /// Throws ParameterError. Also validates `base`.
  void validate() const;
  [[nodiscard]] std::size_t cell_count() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

enum class CellError {
  None,
  DegenerateSteadyState,
  EmitterDark,
  NoOscillation,
  Numerical,
  Parameter,
};

const char* to_string(CellError e);

struct SweepRow {
  double x1 = 0.0;
  std::optional<double> x2;
  std::optional<double> concurrence;
  std::optional<double> g2_zero;
  std::optional<double> period_native;
  std::optional<double> period_seconds;
  CellError error = CellError::None;
  std::string message;
  /// Not part of the deterministic payload.
  double wall_seconds = 0.0;

  [[nodiscard]] bool ok() const { return error == CellError::None; }
};

struct SweepResult {
  GridSpec spec;
  int n_max = 0;
  /// Axis1 is the outer loop: row index = i1 * n2 + i2.
  std::vector<SweepRow> rows;
  double wall_seconds = 0.0;

  [[nodiscard]] std::size_t failed_count() const;
};

/// One cell: full model, steady state, reduced qubit state, then the
/// requested observables. Library errors become the cell's error tag.
SweepRow evaluate_cell(const FullModelParams& p, const SweepObservables& obs, int g2_samples,
                       double tau_max);

/// Every grid cell, evaluated on `workers` threads (0 = hardware
/// concurrency). Output order and values do not depend on `workers`.
SweepResult run_sweep(const GridSpec& spec, int workers = 0);

inline constexpr std::size_t kMinCorrelationCells = 9;

/// Pearson coefficient; throws NumericalError if either column is constant
/// and ParameterError on a length mismatch or fewer than two samples.
double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson correlation between g2(0) and concurrence over cells without
/// errors. Throws NumericalError below kMinCorrelationCells such cells.
double correlation_stats(const SweepResult& result);

}  // namespace ddesim
