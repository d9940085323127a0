#include "ddesim/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddesim/error.hpp"

namespace ddesim {

namespace {

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

DensityMatrix::DensityMatrix(SpaceLayout layout, ComplexMatrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  const int d = layout_.total_dim();
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw DimensionError("DensityMatrix: matrix is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + ", layout needs " + std::to_string(d));
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw NumericalError("DensityMatrix: trace is " + std::to_string(tr.real()) + "+" +
                         std::to_string(tr.imag()) + "i, expected 1");
  }
  if (!is_hermitian(matrix_, kHermitianTol)) {
    throw NumericalError("DensityMatrix: matrix is not Hermitian");
  }
  const double lmin = min_hermitian_eigenvalue(matrix_);
  if (lmin < -kPositivityTol) {
    throw NumericalError("DensityMatrix: negative eigenvalue " + std::to_string(lmin));
  }
}

DensityMatrix DensityMatrix::normalized(SpaceLayout layout, const ComplexMatrix& matrix) {
  ComplexMatrix h = hermitize(matrix);
  const double tr = h.trace().real();
  if (!(std::abs(tr) > 0.0) || !std::isfinite(tr)) {
    throw NumericalError("DensityMatrix::normalized: trace is zero or not finite");
  }
  h /= tr;
  return DensityMatrix(std::move(layout), std::move(h));
}

DensityMatrix DensityMatrix::pure(SpaceLayout layout, const ComplexVector& psi) {
  if (psi.size() != layout.total_dim()) {
    throw DimensionError("DensityMatrix::pure: state vector length does not match layout");
  }
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0.0)) {
    throw NumericalError("DensityMatrix::pure: zero state vector");
  }
  return DensityMatrix(std::move(layout), (psi * psi.adjoint()) / n2);
}

DensityMatrix DensityMatrix::basis(SpaceLayout layout, int index) {
  const int d = layout.total_dim();
  if (index < 0 || index >= d) {
    throw DimensionError("DensityMatrix::basis: index out of range");
  }
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(layout), std::move(m));
}

double DensityMatrix::expectation(const ComplexMatrix& op) const {
  if (op.rows() != dim() || op.cols() != dim()) {
    throw DimensionError("expectation: operator dimension mismatch");
  }
  // Tr[op rho] = sum_ab op_ab rho_ba
  return (op.cwiseProduct(matrix_.transpose())).sum().real();
}

double DensityMatrix::min_eigenvalue() const { return min_hermitian_eigenvalue(matrix_); }

ComplexMatrix partial_trace(const ComplexMatrix& m, const SpaceLayout& layout,
                            std::span<const int> keep) {
  const int n_sub = layout.subsystems();
  if (keep.empty()) {
    throw DimensionError("partial_trace: keep set is empty");
  }
  std::vector<bool> kept(static_cast<std::size_t>(n_sub), false);
  for (int k : keep) {
    if (k < 0 || k >= n_sub) {
      throw DimensionError("partial_trace: subsystem index " + std::to_string(k) +
                           " out of range");
    }
    if (kept[static_cast<std::size_t>(k)]) {
      throw DimensionError("partial_trace: subsystem " + std::to_string(k) + " listed twice");
    }
    kept[static_cast<std::size_t>(k)] = true;
  }
  const int d = layout.total_dim();
  if (m.rows() != d || m.cols() != d) {
    throw DimensionError("partial_trace: matrix dimension does not match layout");
  }

  // Split each full index into (kept index, traced index) once.
  std::vector<int> kept_index(static_cast<std::size_t>(d));
  std::vector<int> traced_index(static_cast<std::size_t>(d));
  int kept_dim = 1;
  for (int s = 0; s < n_sub; ++s) {
    if (kept[static_cast<std::size_t>(s)]) kept_dim *= layout.dim(s);
  }
  for (int idx = 0; idx < d; ++idx) {
    int rem = idx;
    int k_idx = 0, k_stride = 1, t_idx = 0, t_stride = 1;
    for (int s = n_sub - 1; s >= 0; --s) {
      const int ds = layout.dim(s);
      const int digit = rem % ds;
      rem /= ds;
      if (kept[static_cast<std::size_t>(s)]) {
        k_idx += digit * k_stride;
        k_stride *= ds;
      } else {
        t_idx += digit * t_stride;
        t_stride *= ds;
      }
    }
    kept_index[static_cast<std::size_t>(idx)] = k_idx;
    traced_index[static_cast<std::size_t>(idx)] = t_idx;
  }

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      if (traced_index[static_cast<std::size_t>(r)] == traced_index[static_cast<std::size_t>(c)]) {
        out(kept_index[static_cast<std::size_t>(r)], kept_index[static_cast<std::size_t>(c)]) +=
            m(r, c);
      }
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  ComplexMatrix reduced = partial_trace(rho.matrix(), rho.layout(), keep);
  return DensityMatrix::normalized(rho.layout().subset(keep), reduced);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("trace_distance: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(a.matrix() - b.matrix()),
                                                      Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace ddesim
