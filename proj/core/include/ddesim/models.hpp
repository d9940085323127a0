#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ddesim/density_matrix.hpp"
#include "ddesim/liouvillian.hpp"

namespace ddesim {

enum class RelaxationOperator {
  Lower,  ///< sigma^- : emitter relaxation loses its excitation
  Raise,  ///< sigma^+ : literal reading, pumps towards |e>
};

/// Physical knobs of the driven qubit-qubit-plasmon model. Energies and
/// rates are ratios of the plasmon loss rate gamma_a, which is 1 internally.
/// Defaults sit at the high-concurrence point g = eta = 0.05,
/// Delta0 = -Delta1 = 0.01, Delta_a = eta_a = 0.
struct FullModelParams {
  double delta0 = 0.01;
  double delta1 = -0.01;
  double delta_a = 0.0;
  double g0 = 0.05;
  double g1 = 0.05;
  double eta0 = 0.05;
  double eta1 = 0.05;
  double eta_a = 0.0;
  double gamma_r0 = 5e-8;
  double gamma_r1 = 5e-8;
  double gamma_d0 = 1e-7;
  double gamma_d1 = 1e-7;
  /// Plasmon loss rate in s^-1; only used to convert times to seconds.
  double gamma_a_abs = 50e12;
  int n_max = 2;
  RelaxationOperator relaxation = RelaxationOperator::Lower;

  static constexpr double kWeakCouplingLimit = 0.2;

  /// Throws ParameterError naming the offending field.
  void validate() const;
  /// max(g0, g1, eta0, eta1) above kWeakCouplingLimit: adiabatic elimination
  /// is not trustworthy there.
  [[nodiscard]] bool weak_coupling_advisory() const;
  /// Same physics with the qubit labels exchanged.
  [[nodiscard]] FullModelParams with_qubits_swapped() const;

  friend bool operator==(const FullModelParams&, const FullModelParams&) = default;
};

/// Names of the real-valued fields, in declaration order.
std::span<const std::string_view> real_parameter_names();
bool is_real_parameter(std::string_view name);
double get_parameter(const FullModelParams& p, std::string_view name);
void set_parameter(FullModelParams& p, std::string_view name, double value);

struct FullModel {
  SpaceLayout layout;
  ComplexMatrix hamiltonian;
  std::vector<JumpTerm> jumps;

  [[nodiscard]] Liouvillian liouvillian() const { return Liouvillian(layout, hamiltonian, jumps); }
};

/// H = sum_i [D_i s+_i s-_i - eta_i (s+_i + s-_i) - g_i (s+_i a + s-_i a+)]
///     + D_a a+ a - eta_a (a + a+)
/// on qubit0 (x) qubit1 (x) boson, with jumps
///   (1, a), (gamma_r_i, s-_i), (gamma_d_i, sz_i).
FullModel build_full_model(const FullModelParams& p);

/// Plasmon-eliminated two-qubit parameters.
struct EffectiveParams {
  double dtilde0 = 0.0;
  double dtilde1 = 0.0;
  double etatilde0 = 0.0;
  double etatilde1 = 0.0;
  double gtilde = 0.0;
  double gamma00 = 0.0;
  double gamma11 = 0.0;
  double gamma01 = 0.0;
  double z = 0.25;
  /// Local dephasing is unaffected by the elimination and passes through.
  double gamma_d0 = 0.0;
  double gamma_d1 = 0.0;
};

/// Z = 1/4 + D_a^2,
/// Dt_i = D_i - g_i^2 D_a / Z,  etat_i = eta_i + g_i D_a eta_a / Z,
/// gt = g0 g1 D_a / Z,  gamma_ii = gamma_r_i + g_i^2 / Z,  gamma_01 = g0 g1 / Z.
EffectiveParams adiabatic_eliminate(const FullModelParams& p);

struct EffectiveModel {
  SpaceLayout layout = SpaceLayout::two_qubits();
  ComplexMatrix hamiltonian;
  std::vector<JumpTerm> jumps;
  /// [[gamma00, gamma01], [gamma01, gamma11]]
  Eigen::Matrix2d rate_matrix;

  [[nodiscard]] Liouvillian liouvillian() const { return Liouvillian(layout, hamiltonian, jumps); }
};

/// H_qb = sum_i [Dt_i n_i - etat_i (s+_i + s-_i)] - gt (s+_0 s-_1 + s+_1 s-_0).
/// The collective dissipator sum_ij gamma_ij D_ij is diagonalized into
/// independent channels sqrt(lambda_k) * sum_i u_ki s-_i.
EffectiveModel build_effective_model(const EffectiveParams& e);

/// Collective two-qubit basis.
enum class DickeState { E = 0, S = 1, A = 2, G = 3 };

/// Columns: |E> = |ee>, |S> = (|eg> + |ge>)/sqrt2, |A> = (|eg> - |ge>)/sqrt2,
/// |G> = |gg>, expressed in the computational basis.
ComplexMatrix dicke_basis();

struct DickeParams {
  double delta_E = 0.0;
  double delta_S = 0.0;
  double delta_A = 0.0;
  double delta_minus = 0.0;
  double eta_plus = 0.0;
  double eta_minus = 0.0;
  double gamma_S = 0.0;
  double gamma_A = 0.0;
};

struct DickeForm {
  DickeParams params;
  /// H_qb in the (E, S, A, G) basis.
  ComplexMatrix hamiltonian;
  /// Disagreements between the derived coupling pattern and the printed one.
  std::vector<std::string> diagnostics;
};

/// Basis change of H_qb into the Dicke basis. Fields are read off the
/// transformed matrix:
///   <E|H|E> = 2 D+, <S|H|S> = D+ - gt, <A|H|A> = D+ + gt, <A|H|S> = D-,
///   <S|H|G> = <S|H|E> = -eta+, <A|H|G> = -eta-, <A|H|E> = +eta-,
/// with eta+- = (etat0 +- etat1)/sqrt2 and D+- = (Dt0 +- Dt1)/2.
DickeForm dicke_transform(const EffectiveParams& e);

/// Reassembles the (E, S, A, G) Hamiltonian from its parameters.
ComplexMatrix dicke_hamiltonian(const DickeParams& d);

struct DickePopulations {
  double e = 0.0;
  double s = 0.0;
  double a = 0.0;
  double g = 0.0;

  [[nodiscard]] double sum() const { return e + s + a + g; }
};

/// <X|rho|X> for X in the Dicke basis; rho on the [2, 2] layout.
DickePopulations dicke_populations(const DensityMatrix& rho2q);

/// Two-qubit Rabi frequency sqrt((delta_minus/2)^2 + eta^2), where
/// delta_minus = (D0 - D1)/2 is the S-A mixing.
double rabi_frequency(double delta_minus, double eta);

/// Closed-form Dicke populations of the dissipationless effective model
/// with antisymmetric detunings and equal drives, starting from |gg>.
/// `delta_minus` = (D0 - D1)/2. Throws ParameterError when the Rabi
/// frequency is zero.
DickePopulations analytic_populations(double delta_minus, double eta, double t);

}  // namespace ddesim
