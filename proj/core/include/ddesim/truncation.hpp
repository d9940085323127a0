#pragma once

#include "ddesim/models.hpp"

namespace ddesim {

struct TruncationDelta {
  double concurrence = 0.0;
  double g2_zero = 0.0;

  [[nodiscard]] double max() const { return concurrence > g2_zero ? concurrence : g2_zero; }
};

/// Changes in steady-state concurrence and normalized g2(0) when the boson
/// cutoff goes from n_max to n_max + 1, all other parameters as in `p`.
TruncationDelta truncation_deltas(const FullModelParams& p, int n_max);

/// truncation_deltas(p, n_max).max()
double truncation_check(const FullModelParams& p, int n_max);

}  // namespace ddesim
