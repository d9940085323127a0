#include "ddesim/observables.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "ddesim/error.hpp"

namespace ddesim {

namespace {

constexpr double kConcurrenceInputTol = 1e-8;

ComplexMatrix spin_flip() { return kron(sigma_y(), sigma_y()); }

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m));
  Eigen::VectorXd ev = solver.eigenvalues();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    ev(i) = ev(i) <= floor ? 0.0 : std::sqrt(ev(i));
  }
  return solver.eigenvectors() * ev.asDiagonal() * solver.eigenvectors().adjoint();
}

void require_qubit_sites(const SpaceLayout& layout) {
  if (layout.subsystems() < 2 || layout.dim(0) != 2 || layout.dim(1) != 2) {
    throw DimensionError("state layout must start with two qubit sites");
  }
}

ComplexMatrix number_op(int site, const SpaceLayout& layout) {
  return embed(sigma_plus() * sigma_minus(), site, layout);
}

std::vector<double> tau_grid(double tau_max, int n) {
  std::vector<double> taus(static_cast<std::size_t>(n));
  const double dt = tau_max / static_cast<double>(n - 1);
  for (int k = 0; k < n; ++k) taus[static_cast<std::size_t>(k)] = dt * k;
  taus.back() = tau_max;
  return taus;
}

}  // namespace

ConcurrenceResult concurrence(const ComplexMatrix& rho2q, ConcurrenceVariant variant) {
  if (rho2q.rows() != 4 || rho2q.cols() != 4) {
    throw DimensionError("concurrence: expected a 4x4 two-qubit density matrix");
  }
  if (!is_hermitian(rho2q, kConcurrenceInputTol)) {
    throw NumericalError("concurrence: input is not Hermitian");
  }
  if (std::abs(rho2q.trace() - 1.0) > kConcurrenceInputTol) {
    throw NumericalError("concurrence: input trace differs from 1");
  }
  // eig(rho rho~) are the squared singular values of sqrt(rho) Y sqrt(rho)*,
  // which resolves the small ones far better than a non-Hermitian eigensolve.
  const ComplexMatrix root = psd_sqrt(rho2q);
  const ComplexMatrix m = root * spin_flip() * root.conjugate();
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();

  ConcurrenceResult out;
  for (int k = 0; k < 4; ++k) {
    const double s = sv(k);
    out.lambdas[static_cast<std::size_t>(k)] =
        variant == ConcurrenceVariant::Wootters ? s : s * s;
  }
  std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
  const auto& l = out.lambdas;
  out.value = std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
  return out;
}

ConcurrenceResult concurrence(const DensityMatrix& rho2q, ConcurrenceVariant variant) {
  if (rho2q.layout().dims() != std::vector<int>{2, 2}) {
    throw DimensionError("concurrence: state is not on a [2, 2] layout");
  }
  return concurrence(rho2q.matrix(), variant);
}

DensityMatrix reduce_to_qubits(const DensityMatrix& rho) {
  require_qubit_sites(rho.layout());
  if (rho.layout().subsystems() == 2) return rho;
  const std::array<int, 2> keep = {0, 1};
  return partial_trace(rho, keep);
}

PostJump post_jump_state(const DensityMatrix& rho, int emitter) {
  if (emitter != 0 && emitter != 1) {
    throw DimensionError("post_jump_state: emitter must be 0 or 1");
  }
  require_qubit_sites(rho.layout());
  const ComplexMatrix sm = embed(sigma_minus(), emitter, rho.layout());
  const ComplexMatrix jumped = sm * rho.matrix() * sm.adjoint();
  const double weight = jumped.trace().real();
  if (!(weight >= kDarkEmitterWeight)) {
    throw EmitterDark("emitter " + std::to_string(emitter) +
                      " is dark: no excited-state population to emit");
  }
  return PostJump{DensityMatrix::normalized(rho.layout(), jumped / weight), weight};
}

double CorrelationTrace::spacing() const {
  return taus.size() < 2 ? 0.0 : taus[1] - taus[0];
}

double CorrelationTrace::tail_deviation() const {
  if (normalized.empty()) return std::numeric_limits<double>::infinity();
  const std::size_t n = normalized.size();
  const std::size_t count = std::max<std::size_t>(1, (n + 19) / 20);
  double dev = 0.0;
  for (std::size_t k = n - count; k < n; ++k) dev = std::max(dev, std::abs(normalized[k] - 1.0));
  return dev;
}

double CorrelationTrace::min_normalized() const {
  return normalized.empty() ? 0.0 : *std::min_element(normalized.begin(), normalized.end());
}

CorrelationTrace g2_trace(const Liouvillian& l, const DensityMatrix& rho_ss, double tau_max,
                          int n_samples) {
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) {
    throw ParameterError("g2_trace: tau_max must be positive and finite");
  }
  if (n_samples < kMinG2Samples || !std::has_single_bit(static_cast<unsigned>(n_samples))) {
    throw ParameterError("g2_trace: n_samples must be a power of two >= " +
                         std::to_string(kMinG2Samples));
  }
  if (rho_ss.dim() != l.dim()) {
    throw DimensionError("g2_trace: steady state dimension does not match generator");
  }
  const auto& layout = rho_ss.layout();
  require_qubit_sites(layout);
  const std::array<ComplexMatrix, 2> numbers = {number_op(0, layout), number_op(1, layout)};
  const double occupation = rho_ss.expectation(numbers[0]) + rho_ss.expectation(numbers[1]);

  CorrelationTrace trace;
  trace.taus = tau_grid(tau_max, n_samples);
  trace.raw.assign(static_cast<std::size_t>(n_samples), 0.0);
  for (int i = 0; i < 2; ++i) {
    std::optional<PostJump> jump;
    try {
      jump.emplace(post_jump_state(rho_ss, i));
    } catch (const EmitterDark&) {
      trace.dark_emitters.push_back(i);
      continue;
    }
    const Eigen::MatrixXd series =
        expectation_series(l, jump->state.matrix(), numbers, trace.taus);
    for (int k = 0; k < n_samples; ++k) {
      trace.raw[static_cast<std::size_t>(k)] += series(k, 0) + series(k, 1);
    }
    trace.asymptote += occupation;
  }
  if (trace.dark_emitters.size() == 2) {
    throw EmitterDark("g2_trace: both emitters are dark, no emission statistics exist");
  }
  trace.normalized.resize(trace.raw.size());
  std::transform(trace.raw.begin(), trace.raw.end(), trace.normalized.begin(),
                 [&](double r) { return r / trace.asymptote; });
  trace.g2_zero = trace.normalized.front();
  return trace;
}

double g2_zero(const Liouvillian& l, const DensityMatrix& rho_ss) {
  if (rho_ss.dim() != l.dim()) {
    throw DimensionError("g2_zero: steady state dimension does not match generator");
  }
  const auto& layout = rho_ss.layout();
  require_qubit_sites(layout);
  const std::array<ComplexMatrix, 2> numbers = {number_op(0, layout), number_op(1, layout)};
  const double occupation = rho_ss.expectation(numbers[0]) + rho_ss.expectation(numbers[1]);
  const std::array<double, 1> t0 = {0.0};

  double raw = 0.0;
  double asymptote = 0.0;
  int dark = 0;
  for (int i = 0; i < 2; ++i) {
    std::optional<PostJump> jump;
    try {
      jump.emplace(post_jump_state(rho_ss, i));
    } catch (const EmitterDark&) {
      ++dark;
      continue;
    }
    const Eigen::MatrixXd series = expectation_series(l, jump->state.matrix(), numbers, t0);
    raw += series(0, 0) + series(0, 1);
    asymptote += occupation;
  }
  if (dark == 2) {
    throw EmitterDark("g2_zero: both emitters are dark, no emission statistics exist");
  }
  return raw / asymptote;
}

double default_tau_max(const FullModelParams& p) {
  const EffectiveParams e = adiabatic_eliminate(p);
  const double delta_minus = 0.5 * (e.dtilde0 - e.dtilde1);
  const double eta = 0.5 * (e.etatilde0 + e.etatilde1);
  const double omega = rabi_frequency(delta_minus, eta);
  const double slowest = std::min(e.gamma00, e.gamma11);
  double window = 0.0;
  if (omega > 0.0) window = 10.0 * 2.0 * std::numbers::pi / omega;
  if (slowest > 0.0) window = std::max(window, 50.0 / slowest);
  if (!(window > 0.0) || !std::isfinite(window)) {
    throw ParameterError("default_tau_max: no drive and no decay, the window is undefined");
  }
  return window;
}

}  // namespace ddesim
