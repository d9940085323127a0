#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ddesim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Ordered list of subsystem dimensions of a composite Hilbert space.
///
/// Composite basis index is row-major over the subsystems: the first
/// subsystem is the most significant digit. The model convention is
/// qubit0 (x) qubit1 (x) boson, with |g> = 0 and |e> = 1 on each qubit.
class SpaceLayout {
 public:
  explicit SpaceLayout(std::vector<int> subsystem_dims);

  /// [2, 2, n_max + 1]
  static SpaceLayout qubits_and_boson(int n_max);
  /// [2, 2]
  static SpaceLayout two_qubits();

  [[nodiscard]] const std::vector<int>& dims() const noexcept { return dims_; }
  [[nodiscard]] int dim(int site) const;
  [[nodiscard]] int subsystems() const noexcept { return static_cast<int>(dims_.size()); }
  [[nodiscard]] int total_dim() const noexcept { return total_; }

  /// Layout of the kept subsystems, in their original order.
  [[nodiscard]] SpaceLayout subset(std::span<const int> keep) const;

  friend bool operator==(const SpaceLayout&, const SpaceLayout&) = default;

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

// Single-site operators. sigma_plus is the matrix unit |e><g| and
// sigma_minus is |g><e|, so sigma_plus * sigma_minus = |e><e|.
ComplexMatrix identity(int dim);
ComplexMatrix sigma_plus();
ComplexMatrix sigma_minus();
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
/// |e><e| - |g><g|
ComplexMatrix sigma_z();

/// Truncated annihilation operator on span{|0>, ..., |n_max>}.
ComplexMatrix boson_destroy(int n_max);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// `op` acting on subsystem `site` of `layout`, identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, int site, const SpaceLayout& layout);

/// (m + m^dagger) / 2
ComplexMatrix hermitize(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_unitary(const ComplexMatrix& m, double tol);

/// Largest absolute entry; the norm every tolerance in this library refers to.
double max_abs(const ComplexMatrix& m);

/// Column-stacking vectorization and its inverse.
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v, int dim);

}  // namespace ddesim
