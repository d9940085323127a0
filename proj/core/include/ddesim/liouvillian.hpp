#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "ddesim/density_matrix.hpp"
#include "ddesim/operators.hpp"

namespace ddesim {

/// One dissipation channel gamma * D[L].
struct JumpTerm {
  double rate = 0.0;
  ComplexMatrix op;
};

/// Eigen-decomposition of the superoperator, computed once at construction.
struct SpectralCache {
  ComplexVector eigenvalues;
  ComplexMatrix right;      ///< columns are right eigenvectors
  ComplexMatrix right_inv;  ///< inverse of `right`
  double condition = 0.0;   ///< 2-norm condition number of `right`

  static constexpr double kMaxCondition = 1e12;
  [[nodiscard]] bool usable() const noexcept {
    return std::isfinite(condition) && condition <= kMaxCondition;
  }
};

/// Lindblad generator
///   d rho/dt = -i[H, rho] + sum_k gamma_k (L_k rho L_k^+ - 1/2 {L_k^+ L_k, rho})
/// as a dense matrix on column-stacked vec(rho). Immutable after construction.
class Liouvillian {
 public:
  static constexpr double kHermitianTol = 1e-10;

  Liouvillian(SpaceLayout layout, ComplexMatrix hamiltonian, std::vector<JumpTerm> jumps);

  [[nodiscard]] const SpaceLayout& layout() const noexcept { return layout_; }
  [[nodiscard]] int dim() const noexcept { return layout_.total_dim(); }
  [[nodiscard]] const ComplexMatrix& hamiltonian() const noexcept { return hamiltonian_; }
  [[nodiscard]] const std::vector<JumpTerm>& jumps() const noexcept { return jumps_; }
  [[nodiscard]] const ComplexMatrix& superop() const noexcept { return superop_; }
  [[nodiscard]] const SpectralCache& spectrum() const noexcept { return spectrum_; }

  /// Smallest decay rate -Re(lambda) over all eigenvalues except the one
  /// closest to zero.
  [[nodiscard]] double spectral_gap() const;

 private:
  SpaceLayout layout_;
  ComplexMatrix hamiltonian_;
  std::vector<JumpTerm> jumps_;
  ComplexMatrix superop_;
  SpectralCache spectrum_;
};

/// Superoperator matrix alone, without validation or spectral cache.
ComplexMatrix lindblad_superoperator(const ComplexMatrix& h, std::span<const JumpTerm> jumps);

Liouvillian build_liouvillian(const ComplexMatrix& h, std::vector<JumpTerm> jumps,
                              SpaceLayout layout);

/// d rho / dt as a matrix.
ComplexMatrix apply_liouvillian(const Liouvillian& l, const ComplexMatrix& rho);
ComplexMatrix apply_liouvillian(const Liouvillian& l, const DensityMatrix& rho);

enum class Propagator { Spectral, Integrator };

struct IntegratorTolerances {
  double relative = 1e-9;
  double absolute = 1e-12;
};

struct EvolveResult {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  Propagator method = Propagator::Spectral;
  /// True when the spectral path was rejected and the integrator used instead.
  bool fell_back = false;
  /// Largest |Tr rho(t) - 1| before renormalization.
  double max_trace_drift = 0.0;
  /// Largest max-entry |rho - rho^+| before hermitization.
  double max_hermiticity_error = 0.0;
};

/// Per-sample drift allowed before the spectral path is rejected.
inline constexpr double kMaxPropagationDrift = 1e-9;

/// exp(L t) rho0 at each requested time (nonnegative, strictly increasing).
/// Uses the spectral cache; falls back to the adaptive integrator if the
/// eigenbasis is ill-conditioned or the spectral samples drift.
EvolveResult evolve(const Liouvillian& l, const DensityMatrix& rho0, std::span<const double> times);

/// Dormand-Prince 5(4) adaptive integration of the same equation.
EvolveResult evolve_integrated(const Liouvillian& l, const DensityMatrix& rho0,
                               std::span<const double> times, IntegratorTolerances tol = {});

/// Tr[op_j rho(t_k)] for each op and time, as a (times x ops) table.
/// rho0 need not be a state; linearity is all that is used. Values at t = 0
/// are evaluated directly on rho0.
Eigen::MatrixXd expectation_series(const Liouvillian& l, const ComplexMatrix& rho0,
                                   std::span<const ComplexMatrix> ops,
                                   std::span<const double> times);

inline constexpr double kSteadyStateResidualTol = 1e-10;
inline constexpr double kKernelTol = 1e-10;

/// Unique fixed point of the generator. Throws DegenerateSteadyState when
/// more than one eigenvalue lies within kKernelTol of zero, NumericalError
/// when the candidate fails the residual or positivity checks.
DensityMatrix steady_state(const Liouvillian& l);

}  // namespace ddesim
