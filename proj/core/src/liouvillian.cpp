#include "ddesim/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/numeric/odeint.hpp>

#ifdef DDESIM_HAVE_LAPACKE
#include <complex>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

#include "ddesim/error.hpp"

namespace ddesim {

namespace {

void check_times(std::span<const double> times) {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(times[k]) || times[k] < 0.0) {
      throw ParameterError("evolve: times must be finite and nonnegative");
    }
    if (k > 0 && !(times[k] > times[k - 1])) {
      throw ParameterError("evolve: times must be strictly increasing");
    }
  }
}

// Unit-norm right eigenvectors. zgeev is roughly 3x faster than Eigen's
// complex Schur path at the sizes used here, so prefer it when available.
bool eigendecompose(const ComplexMatrix& m, ComplexVector& values, ComplexMatrix& vectors) {
#ifdef DDESIM_HAVE_LAPACKE
  ComplexMatrix work = m;
  const auto n = static_cast<lapack_int>(m.rows());
  values.resize(m.rows());
  vectors.resize(m.rows(), m.cols());
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, work.data(), n,
                                        values.data(), nullptr, 1, vectors.data(), n);
  return info == 0;
#else
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) return false;
  values = solver.eigenvalues();
  vectors = solver.eigenvectors();
  return true;
#endif
}

SpectralCache decompose(const ComplexMatrix& superop) {
  SpectralCache cache;
  if (!eigendecompose(superop, cache.eigenvalues, cache.right)) {
    cache.condition = std::numeric_limits<double>::infinity();
    return cache;
  }

  Eigen::BDCSVD<ComplexMatrix> svd(cache.right);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  cache.condition = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (cache.usable()) {
    cache.right_inv = cache.right.partialPivLu().inverse();
  }
  return cache;
}

std::vector<Eigen::Index> order_by_magnitude(const ComplexVector& ev) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(ev.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return std::abs(ev(a)) < std::abs(ev(b)); });
  return idx;
}

// Real-valued state for odeint: interleaved (re, im) of vec(rho).
using OdeState = std::vector<double>;

OdeState to_ode_state(const ComplexVector& v) {
  OdeState x(static_cast<std::size_t>(2 * v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    x[static_cast<std::size_t>(2 * i)] = v(i).real();
    x[static_cast<std::size_t>(2 * i + 1)] = v(i).imag();
  }
  return x;
}

ComplexVector from_ode_state(const OdeState& x) {
  ComplexVector v(static_cast<Eigen::Index>(x.size() / 2));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) = Complex(x[static_cast<std::size_t>(2 * i)], x[static_cast<std::size_t>(2 * i + 1)]);
  }
  return v;
}

std::vector<ComplexVector> integrate_vectorized(const ComplexMatrix& superop, const ComplexVector& v0,
                                                std::span<const double> times,
                                                IntegratorTolerances tol) {
  namespace odeint = boost::numeric::odeint;
  std::vector<double> grid;
  grid.reserve(times.size() + 1);
  const bool prepend_zero = times.front() > 0.0;
  if (prepend_zero) grid.push_back(0.0);
  grid.insert(grid.end(), times.begin(), times.end());

  auto rhs = [&superop](const OdeState& x, OdeState& dxdt, double /*t*/) {
    const ComplexVector dv = superop * from_ode_state(x);
    for (Eigen::Index i = 0; i < dv.size(); ++i) {
      dxdt[static_cast<std::size_t>(2 * i)] = dv(i).real();
      dxdt[static_cast<std::size_t>(2 * i + 1)] = dv(i).imag();
    }
  };

  std::vector<ComplexVector> out;
  out.reserve(times.size());
  std::size_t seen = 0;
  auto observer = [&](const OdeState& x, double /*t*/) {
    if (seen++ == 0 && prepend_zero) return;
    out.push_back(from_ode_state(x));
  };

  OdeState x = to_ode_state(v0);
  if (grid.size() == 1) {
    out.push_back(v0);
    return out;
  }
  auto stepper = odeint::make_controlled(tol.absolute, tol.relative,
                                         odeint::runge_kutta_dopri5<OdeState>());
  const double dt0 = std::min(1e-2, (grid[1] - grid[0]) / 4.0);
  odeint::integrate_times(stepper, rhs, x, grid.begin(), grid.end(), dt0, observer);
  return out;
}

// Builds states from raw vectors, recording drift before cleanup.
EvolveResult assemble(const Liouvillian& l, std::span<const double> times,
                      const std::vector<ComplexVector>& vecs, Propagator method) {
  EvolveResult result;
  result.method = method;
  result.times.assign(times.begin(), times.end());
  result.states.reserve(vecs.size());
  for (const auto& v : vecs) {
    const ComplexMatrix m = unvectorize(v, l.dim());
    result.max_trace_drift = std::max(result.max_trace_drift, std::abs(m.trace() - 1.0));
    result.max_hermiticity_error = std::max(result.max_hermiticity_error, max_abs(m - m.adjoint()));
    result.states.push_back(DensityMatrix::normalized(l.layout(), m));
  }
  return result;
}

}  // namespace

ComplexMatrix lindblad_superoperator(const ComplexMatrix& h, std::span<const JumpTerm> jumps) {
  const auto d = h.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const Complex i(0.0, 1.0);
  // vec(A X B) = (B^T (x) A) vec(X)
  ComplexMatrix s = -i * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& j : jumps) {
    const ComplexMatrix ldl = j.op.adjoint() * j.op;
    s += j.rate * (kron(j.op.conjugate(), j.op) - 0.5 * kron(id, ldl) -
                   0.5 * kron(ldl.transpose(), id));
  }
  return s;
}

Liouvillian::Liouvillian(SpaceLayout layout, ComplexMatrix hamiltonian, std::vector<JumpTerm> jumps)
    : layout_(std::move(layout)), hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  const int d = layout_.total_dim();
  if (hamiltonian_.rows() != d || hamiltonian_.cols() != d) {
    throw DimensionError("Liouvillian: Hamiltonian dimension does not match layout");
  }
  if (!is_hermitian(hamiltonian_, kHermitianTol)) {
    throw ParameterError("Liouvillian: Hamiltonian is not Hermitian");
  }
  for (std::size_t k = 0; k < jumps_.size(); ++k) {
    const auto& j = jumps_[k];
    if (!(j.rate >= 0.0) || !std::isfinite(j.rate)) {
      throw ParameterError("Liouvillian: jump " + std::to_string(k) + " has negative rate");
    }
    if (j.op.rows() != d || j.op.cols() != d) {
      throw DimensionError("Liouvillian: jump " + std::to_string(k) +
                           " operator dimension does not match layout");
    }
  }
  superop_ = lindblad_superoperator(hamiltonian_, jumps_);
  spectrum_ = decompose(superop_);
}

double Liouvillian::spectral_gap() const {
  const auto& ev = spectrum_.eigenvalues;
  if (ev.size() < 2) return 0.0;
  const auto order = order_by_magnitude(ev);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < order.size(); ++k) {
    gap = std::min(gap, -ev(order[k]).real());
  }
  return gap;
}

Liouvillian build_liouvillian(const ComplexMatrix& h, std::vector<JumpTerm> jumps,
                              SpaceLayout layout) {
  return Liouvillian(std::move(layout), h, std::move(jumps));
}

ComplexMatrix apply_liouvillian(const Liouvillian& l, const ComplexMatrix& rho) {
  if (rho.rows() != l.dim() || rho.cols() != l.dim()) {
    throw DimensionError("apply_liouvillian: state dimension does not match generator");
  }
  return unvectorize(l.superop() * vectorize(rho), l.dim());
}

ComplexMatrix apply_liouvillian(const Liouvillian& l, const DensityMatrix& rho) {
  return apply_liouvillian(l, rho.matrix());
}

EvolveResult evolve_integrated(const Liouvillian& l, const DensityMatrix& rho0,
                               std::span<const double> times, IntegratorTolerances tol) {
  if (rho0.dim() != l.dim()) {
    throw DimensionError("evolve: initial state dimension does not match generator");
  }
  check_times(times);
  if (times.empty()) {
    EvolveResult empty;
    empty.method = Propagator::Integrator;
    return empty;
  }
  const auto vecs = integrate_vectorized(l.superop(), vectorize(rho0.matrix()), times, tol);
  return assemble(l, times, vecs, Propagator::Integrator);
}

EvolveResult evolve(const Liouvillian& l, const DensityMatrix& rho0, std::span<const double> times) {
  if (rho0.dim() != l.dim()) {
    throw DimensionError("evolve: initial state dimension does not match generator");
  }
  check_times(times);
  const auto& sc = l.spectrum();
  if (times.empty()) return EvolveResult{};
  if (sc.usable()) {
    const ComplexVector v0 = vectorize(rho0.matrix());
    const ComplexVector coeff = sc.right_inv * v0;
    std::vector<ComplexVector> vecs;
    vecs.reserve(times.size());
    for (double t : times) {
      if (t == 0.0) {
        vecs.push_back(v0);
        continue;
      }
      const ComplexVector phased = (sc.eigenvalues * t).array().exp() * coeff.array();
      vecs.push_back(sc.right * phased);
    }
    auto result = assemble(l, times, vecs, Propagator::Spectral);
    if (result.max_trace_drift <= kMaxPropagationDrift &&
        result.max_hermiticity_error <= kMaxPropagationDrift) {
      return result;
    }
  }
  auto result = evolve_integrated(l, rho0, times);
  result.fell_back = true;
  return result;
}

Eigen::MatrixXd expectation_series(const Liouvillian& l, const ComplexMatrix& rho0,
                                   std::span<const ComplexMatrix> ops,
                                   std::span<const double> times) {
  const int d = l.dim();
  if (rho0.rows() != d || rho0.cols() != d) {
    throw DimensionError("expectation_series: state dimension does not match generator");
  }
  for (const auto& op : ops) {
    if (op.rows() != d || op.cols() != d) {
      throw DimensionError("expectation_series: observable dimension does not match generator");
    }
  }
  check_times(times);

  const auto n_t = static_cast<Eigen::Index>(times.size());
  const auto n_ops = static_cast<Eigen::Index>(ops.size());
  Eigen::MatrixXd out(n_t, n_ops);
  // Tr[op rho] = vec(op^T) . vec(rho)
  std::vector<ComplexVector> probes;
  probes.reserve(ops.size());
  for (const auto& op : ops) probes.push_back(vectorize(op.transpose()));

  const ComplexVector v0 = vectorize(rho0);
  const auto& sc = l.spectrum();
  if (sc.usable()) {
    const ComplexVector coeff = sc.right_inv * v0;
    // amplitude[j](k) = (probe_j^T V)_k * coeff_k
    Eigen::MatrixXcd amplitude(n_ops, coeff.size());
    for (Eigen::Index j = 0; j < n_ops; ++j) {
      amplitude.row(j) = (probes[static_cast<std::size_t>(j)].transpose() * sc.right).array() *
                         coeff.transpose().array();
    }
    for (Eigen::Index k = 0; k < n_t; ++k) {
      const double t = times[static_cast<std::size_t>(k)];
      if (t == 0.0) {
        for (Eigen::Index j = 0; j < n_ops; ++j) {
          out(k, j) = probes[static_cast<std::size_t>(j)].cwiseProduct(v0).sum().real();
        }
        continue;
      }
      const ComplexVector phase = (sc.eigenvalues * t).array().exp();
      out.row(k) = (amplitude * phase).real().transpose();
    }
    return out;
  }

  const auto vecs = integrate_vectorized(l.superop(), v0, times, IntegratorTolerances{});
  for (Eigen::Index k = 0; k < n_t; ++k) {
    for (Eigen::Index j = 0; j < n_ops; ++j) {
      out(k, j) = probes[static_cast<std::size_t>(j)]
                      .cwiseProduct(vecs[static_cast<std::size_t>(k)])
                      .sum()
                      .real();
    }
  }
  return out;
}

DensityMatrix steady_state(const Liouvillian& l) {
  const auto& sc = l.spectrum();
  ComplexVector kernel_vec;
  if (sc.eigenvalues.size() > 0) {
    const auto order = order_by_magnitude(sc.eigenvalues);
    if (order.size() > 1 && std::abs(sc.eigenvalues(order[1])) < kKernelTol) {
      throw DegenerateSteadyState(
          "steady_state: Liouvillian kernel is degenerate (|lambda_1| = " +
          std::to_string(std::abs(sc.eigenvalues(order[1]))) +
          "); the parameters decouple a sector and the fixed point is not unique");
    }
    kernel_vec = sc.right.col(order[0]);
  } else {
    throw NumericalError("steady_state: eigen-decomposition of the Liouvillian failed");
  }

  ComplexMatrix m = unvectorize(kernel_vec, l.dim());
  const Complex tr = m.trace();
  if (std::abs(tr) < 1e-14) {
    throw NumericalError("steady_state: kernel vector is traceless");
  }
  m /= tr;
  DensityMatrix rho = DensityMatrix::normalized(l.layout(), m);
  const double residual = max_abs(apply_liouvillian(l, rho));
  if (residual >= kSteadyStateResidualTol) {
    throw NumericalError("steady_state: residual " + std::to_string(residual) +
                         " exceeds tolerance");
  }
  return rho;
}

}  // namespace ddesim
