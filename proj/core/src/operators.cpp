#include "ddesim/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddesim/error.hpp"

namespace ddesim {

SpaceLayout::SpaceLayout(std::vector<int> subsystem_dims) : dims_(std::move(subsystem_dims)) {
  if (dims_.empty()) {
    throw DimensionError("SpaceLayout needs at least one subsystem");
  }
  for (int d : dims_) {
    if (d < 1) {
      throw DimensionError("SpaceLayout subsystem dimension must be positive, got " +
                           std::to_string(d));
    }
    total_ *= d;
  }
}

SpaceLayout SpaceLayout::qubits_and_boson(int n_max) {
  if (n_max < 1) {
    throw ParameterError("boson truncation n_max must be >= 1");
  }
  return SpaceLayout({2, 2, n_max + 1});
}

SpaceLayout SpaceLayout::two_qubits() { return SpaceLayout({2, 2}); }

int SpaceLayout::dim(int site) const {
  if (site < 0 || site >= subsystems()) {
    throw DimensionError("subsystem index " + std::to_string(site) + " out of range");
  }
  return dims_[static_cast<std::size_t>(site)];
}

SpaceLayout SpaceLayout::subset(std::span<const int> keep) const {
  std::vector<int> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> out;
  out.reserve(sorted.size());
  for (int s : sorted) out.push_back(dim(s));
  return SpaceLayout(std::move(out));
}

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix sigma_plus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

ComplexMatrix sigma_minus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0,
       1.0, 0.0;
  return m;
}

ComplexMatrix sigma_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0),
       Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix sigma_z() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return m;
}

ComplexMatrix boson_destroy(int n_max) {
  if (n_max < 1) {
    throw ParameterError("boson_destroy: n_max must be >= 1");
  }
  ComplexMatrix a = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, int site, const SpaceLayout& layout) {
  const int d = layout.dim(site);
  if (op.rows() != d || op.cols() != d) {
    throw DimensionError("embed: operator is " + std::to_string(op.rows()) + "x" +
                         std::to_string(op.cols()) + " but subsystem " + std::to_string(site) +
                         " has dimension " + std::to_string(d));
  }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int s = 0; s < layout.subsystems(); ++s) {
    out = kron(out, s == site ? op : identity(layout.dim(s)));
  }
  return out;
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("hermitize: matrix is not square");
  }
  return 0.5 * (m + m.adjoint());
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())) <= tol;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ComplexVector vectorize(const ComplexMatrix& m) {
  // Eigen storage is column-major, which is exactly column stacking.
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw DimensionError("unvectorize: length does not match dim^2");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

}  // namespace ddesim
