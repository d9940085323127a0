#pragma once

#include <array>
#include <vector>

#include "ddesim/density_matrix.hpp"
#include "ddesim/liouvillian.hpp"
#include "ddesim/models.hpp"

namespace ddesim {

enum class ConcurrenceVariant {
  /// lambda_j = sqrt(eig(rho rho~)): Wootters' definition.
  Wootters,
  /// lambda_j = eig(rho rho~) with no square root; kept for comparison only.
  LiteralEigenvalues,
};

struct ConcurrenceResult {
  double value = 0.0;
  /// Sorted descending, all >= 0.
  std::array<double, 4> lambdas{};
};

/// Two-qubit concurrence max(0, l1 - l2 - l3 - l4) with rho~ = (sy x sy) rho* (sy x sy).
/// Throws NumericalError for non-Hermitian or non-unit-trace input (tolerance 1e-8).
ConcurrenceResult concurrence(const ComplexMatrix& rho2q,
                              ConcurrenceVariant variant = ConcurrenceVariant::Wootters);
ConcurrenceResult concurrence(const DensityMatrix& rho2q,
                              ConcurrenceVariant variant = ConcurrenceVariant::Wootters);

/// Qubits (sites 0 and 1) of a qubit-qubit-boson state.
DensityMatrix reduce_to_qubits(const DensityMatrix& rho);

struct PostJump {
  DensityMatrix state;
  /// Tr[s-_i rho s+_i] = <n_i>
  double weight = 0.0;
};

inline constexpr double kDarkEmitterWeight = 1e-14;

/// rho -> s-_i rho s+_i / Tr[...] for emitter i in {0, 1}. Throws EmitterDark
/// when the weight is below kDarkEmitterWeight.
PostJump post_jump_state(const DensityMatrix& rho, int emitter);

/// Second-order correlation from emitter jumps,
///   raw(tau) = sum_{i bright} sum_j Tr[n_j rho_i(tau)],
/// with rho_i(tau) the Lindblad evolution of the post-jump state of emitter i.
/// `normalized` divides by the tau -> infinity value sum_{i bright} sum_j <n_j>_ss.
struct CorrelationTrace {
  std::vector<double> taus;
  std::vector<double> raw;
  std::vector<double> normalized;
  double asymptote = 0.0;
  double g2_zero = 0.0;
  std::vector<int> dark_emitters;

  [[nodiscard]] double spacing() const;
  /// max |normalized - 1| over the last 5% of the grid.
  [[nodiscard]] double tail_deviation() const;
  [[nodiscard]] double min_normalized() const;
};

inline constexpr int kDefaultG2Samples = 4096;
inline constexpr int kMinG2Samples = 256;
inline constexpr double kTailTolerance = 0.05;

/// Samples on the inclusive uniform grid [0, tau_max]. n_samples must be a
/// power of two >= kMinG2Samples. Throws EmitterDark if both emitters are dark.
CorrelationTrace g2_trace(const Liouvillian& l, const DensityMatrix& rho_ss, double tau_max,
                          int n_samples = kDefaultG2Samples);

/// normalized g2 at tau = 0 without any propagation.
double g2_zero(const Liouvillian& l, const DensityMatrix& rho_ss);

/// Window long enough for both the Rabi oscillation and the slowest local
/// decay: max(10 * 2pi / Omega, 50 / min(gamma00, gamma11)).
double default_tau_max(const FullModelParams& p);

struct TimescaleResult {
  /// Cycles per 1/gamma_a.
  double peak_frequency = 0.0;
  /// 1 / peak_frequency, in units of 1/gamma_a.
  double period_native = 0.0;
  double period_seconds = 0.0;
  std::vector<double> frequencies;
  std::vector<double> magnitudes;
};

inline constexpr double kMinPeakToMedian = 3.0;

/// Hann-windowed FFT of (normalized - 1). The peak is the largest local
/// maximum of the magnitude spectrum above DC, refined by a parabola through
/// three bins. Throws NoOscillation when there is no such maximum or it is
/// less than kMinPeakToMedian times the median magnitude, and NumericalError
/// when the trace tail has not converged.
TimescaleResult extract_timescale(const CorrelationTrace& trace, double gamma_a_abs);

}  // namespace ddesim
