#pragma once

#include <span>

#include "ddesim/operators.hpp"

namespace ddesim {

/// Trace-one, Hermitian, numerically positive operator on a SpaceLayout.
///
/// Construction validates the invariants; a DensityMatrix that exists is
/// always a physical state to within the tolerances below.
class DensityMatrix {
 public:
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kPositivityTol = 1e-9;

  /// Validates `matrix` as-is. Throws DimensionError / NumericalError.
  DensityMatrix(SpaceLayout layout, ComplexMatrix matrix);

  /// Hermitizes and trace-normalizes `matrix` before validating.
  static DensityMatrix normalized(SpaceLayout layout, const ComplexMatrix& matrix);
  /// |psi><psi| / <psi|psi>
  static DensityMatrix pure(SpaceLayout layout, const ComplexVector& psi);
  /// Computational basis projector |index><index|.
  static DensityMatrix basis(SpaceLayout layout, int index);

  [[nodiscard]] const SpaceLayout& layout() const noexcept { return layout_; }
  [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] int dim() const noexcept { return layout_.total_dim(); }

  /// Tr[op * rho], real part.
  [[nodiscard]] double expectation(const ComplexMatrix& op) const;
  [[nodiscard]] double min_eigenvalue() const;

 private:
  SpaceLayout layout_;
  ComplexMatrix matrix_;
};

/// Reduced state on the subsystems listed in `keep` (any order, no repeats).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// Same contraction on a bare matrix, without state validation.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SpaceLayout& layout,
                            std::span<const int> keep);

/// Half the trace norm of (a - b).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace ddesim
