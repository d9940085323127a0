#include "ddesim/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ddesim/error.hpp"

namespace ddesim {

namespace {

constexpr std::array<std::string_view, 13> kRealNames = {
    "delta0", "delta1",   "delta_a",  "g0",       "g1",       "eta0",       "eta1",
    "eta_a",  "gamma_r0", "gamma_r1", "gamma_d0", "gamma_d1", "gamma_a_abs"};

// Works for both const and mutable params.
template <class Params>
auto field(Params& p, std::string_view name) -> decltype(&p.delta0) {
  if (name == "delta0") return &p.delta0;
  if (name == "delta1") return &p.delta1;
  if (name == "delta_a") return &p.delta_a;
  if (name == "g0") return &p.g0;
  if (name == "g1") return &p.g1;
  if (name == "eta0") return &p.eta0;
  if (name == "eta1") return &p.eta1;
  if (name == "eta_a") return &p.eta_a;
  if (name == "gamma_r0") return &p.gamma_r0;
  if (name == "gamma_r1") return &p.gamma_r1;
  if (name == "gamma_d0") return &p.gamma_d0;
  if (name == "gamma_d1") return &p.gamma_d1;
  if (name == "gamma_a_abs") return &p.gamma_a_abs;
  return nullptr;
}

// Two-qubit computational indices, qubit0 most significant.
constexpr int kGG = 0;
constexpr int kGE = 1;
constexpr int kEG = 2;
constexpr int kEE = 3;

ComplexMatrix effective_hamiltonian(const EffectiveParams& e) {
  const auto layout = SpaceLayout::two_qubits();
  const ComplexMatrix sm0 = embed(sigma_minus(), 0, layout);
  const ComplexMatrix sm1 = embed(sigma_minus(), 1, layout);
  const ComplexMatrix sp0 = sm0.adjoint();
  const ComplexMatrix sp1 = sm1.adjoint();
  return e.dtilde0 * sp0 * sm0 + e.dtilde1 * sp1 * sm1 - e.etatilde0 * (sp0 + sm0) -
         e.etatilde1 * (sp1 + sm1) - e.gtilde * (sp0 * sm1 + sp1 * sm0);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

void FullModelParams::validate() const {
  for (auto name : kRealNames) {
    const double v = get_parameter(*this, name);
    if (!std::isfinite(v)) {
      throw ParameterError("parameter '" + std::string(name) + "' is not finite");
    }
  }
  const std::array<std::pair<std::string_view, double>, 4> rates = {
      {{"gamma_r0", gamma_r0}, {"gamma_r1", gamma_r1}, {"gamma_d0", gamma_d0}, {"gamma_d1", gamma_d1}}};
  for (const auto& [name, v] : rates) {
    if (v < 0.0) {
      throw ParameterError("rate '" + std::string(name) + "' must be >= 0, got " + fmt(v));
    }
  }
  if (!(gamma_a_abs > 0.0)) {
    throw ParameterError("gamma_a_abs must be > 0");
  }
  if (n_max < 1) {
    throw ParameterError("n_max must be >= 1, got " + std::to_string(n_max));
  }
}

bool FullModelParams::weak_coupling_advisory() const {
  return std::max({std::abs(g0), std::abs(g1), std::abs(eta0), std::abs(eta1)}) >
         kWeakCouplingLimit;
}

FullModelParams FullModelParams::with_qubits_swapped() const {
  FullModelParams q = *this;
  std::swap(q.delta0, q.delta1);
  std::swap(q.g0, q.g1);
  std::swap(q.eta0, q.eta1);
  std::swap(q.gamma_r0, q.gamma_r1);
  std::swap(q.gamma_d0, q.gamma_d1);
  return q;
}

std::span<const std::string_view> real_parameter_names() { return kRealNames; }

bool is_real_parameter(std::string_view name) {
  return std::find(kRealNames.begin(), kRealNames.end(), name) != kRealNames.end();
}

double get_parameter(const FullModelParams& p, std::string_view name) {
  const double* f = field(p, name);
  if (f == nullptr) {
    throw ParameterError("unknown parameter '" + std::string(name) + "'");
  }
  return *f;
}

void set_parameter(FullModelParams& p, std::string_view name, double value) {
  auto* f = field(p, name);
  if (f == nullptr) {
    throw ParameterError("unknown parameter '" + std::string(name) + "'");
  }
  *f = value;
}

FullModel build_full_model(const FullModelParams& p) {
  p.validate();
  auto layout = SpaceLayout::qubits_and_boson(p.n_max);
  const ComplexMatrix sm0 = embed(sigma_minus(), 0, layout);
  const ComplexMatrix sm1 = embed(sigma_minus(), 1, layout);
  const ComplexMatrix sp0 = sm0.adjoint();
  const ComplexMatrix sp1 = sm1.adjoint();
  const ComplexMatrix a = embed(boson_destroy(p.n_max), 2, layout);
  const ComplexMatrix ad = a.adjoint();

  ComplexMatrix h = p.delta0 * sp0 * sm0 + p.delta1 * sp1 * sm1;
  h -= p.eta0 * (sp0 + sm0) + p.eta1 * (sp1 + sm1);
  h -= p.g0 * (sp0 * a + sm0 * ad) + p.g1 * (sp1 * a + sm1 * ad);
  h += p.delta_a * ad * a - p.eta_a * (a + ad);

  const bool lower = p.relaxation == RelaxationOperator::Lower;
  std::vector<JumpTerm> jumps;
  jumps.push_back({1.0, a});
  jumps.push_back({p.gamma_r0, lower ? sm0 : sp0});
  jumps.push_back({p.gamma_r1, lower ? sm1 : sp1});
  jumps.push_back({p.gamma_d0, embed(sigma_z(), 0, layout)});
  jumps.push_back({p.gamma_d1, embed(sigma_z(), 1, layout)});
  return FullModel{std::move(layout), std::move(h), std::move(jumps)};
}

EffectiveParams adiabatic_eliminate(const FullModelParams& p) {
  EffectiveParams e;
  e.z = 0.25 + p.delta_a * p.delta_a;
  e.dtilde0 = p.delta0 - p.g0 * p.g0 * p.delta_a / e.z;
  e.dtilde1 = p.delta1 - p.g1 * p.g1 * p.delta_a / e.z;
  e.etatilde0 = p.eta0 + p.g0 * p.delta_a * p.eta_a / e.z;
  e.etatilde1 = p.eta1 + p.g1 * p.delta_a * p.eta_a / e.z;
  e.gtilde = p.g0 * p.g1 * p.delta_a / e.z;
  e.gamma00 = p.gamma_r0 + p.g0 * p.g0 / e.z;
  e.gamma11 = p.gamma_r1 + p.g1 * p.g1 / e.z;
  e.gamma01 = p.g0 * p.g1 / e.z;
  e.gamma_d0 = p.gamma_d0;
  e.gamma_d1 = p.gamma_d1;
  return e;
}

EffectiveModel build_effective_model(const EffectiveParams& e) {
  EffectiveModel m;
  m.hamiltonian = effective_hamiltonian(e);
  m.rate_matrix << e.gamma00, e.gamma01, e.gamma01, e.gamma11;

  const ComplexMatrix sm0 = embed(sigma_minus(), 0, m.layout);
  const ComplexMatrix sm1 = embed(sigma_minus(), 1, m.layout);

  constexpr double kPsdTol = 1e-12;
  if (e.gamma01 == 0.0) {
    if (e.gamma00 < -kPsdTol || e.gamma11 < -kPsdTol) {
      throw ParameterError("effective rate matrix has a negative eigenvalue");
    }
    m.jumps.push_back({std::max(e.gamma00, 0.0), sm0});
    m.jumps.push_back({std::max(e.gamma11, 0.0), sm1});
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(m.rate_matrix);
    const double scale = std::max(1.0, m.rate_matrix.cwiseAbs().maxCoeff());
    // Descending, so the superradiant channel comes first.
    for (int k = 1; k >= 0; --k) {
      const double lambda = solver.eigenvalues()(k);
      if (lambda < -kPsdTol) {
        throw ParameterError("effective rate matrix has a negative eigenvalue " + fmt(lambda));
      }
      if (lambda <= 1e-15 * scale) continue;
      Eigen::Vector2d u = solver.eigenvectors().col(k);
      if (u(0) < 0.0 || (u(0) == 0.0 && u(1) < 0.0)) u = -u;
      m.jumps.push_back({lambda, u(0) * sm0 + u(1) * sm1});
    }
  }
  m.jumps.push_back({e.gamma_d0, embed(sigma_z(), 0, m.layout)});
  m.jumps.push_back({e.gamma_d1, embed(sigma_z(), 1, m.layout)});
  return m;
}

ComplexMatrix dicke_basis() {
  const double r = std::numbers::sqrt2 / 2.0;
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(kEE, static_cast<int>(DickeState::E)) = 1.0;
  u(kEG, static_cast<int>(DickeState::S)) = r;
  u(kGE, static_cast<int>(DickeState::S)) = r;
  u(kEG, static_cast<int>(DickeState::A)) = r;
  u(kGE, static_cast<int>(DickeState::A)) = -r;
  u(kGG, static_cast<int>(DickeState::G)) = 1.0;
  return u;
}

DickeForm dicke_transform(const EffectiveParams& e) {
  constexpr int E = static_cast<int>(DickeState::E);
  constexpr int S = static_cast<int>(DickeState::S);
  constexpr int A = static_cast<int>(DickeState::A);
  constexpr int G = static_cast<int>(DickeState::G);

  const ComplexMatrix u = dicke_basis();
  DickeForm form;
  form.hamiltonian = u.adjoint() * effective_hamiltonian(e) * u;
  const auto& h = form.hamiltonian;

  auto& d = form.params;
  d.delta_E = h(E, E).real();
  d.delta_S = h(S, S).real();
  d.delta_A = h(A, A).real();
  d.delta_minus = h(A, S).real();
  d.eta_plus = -h(S, G).real();
  d.eta_minus = -h(A, G).real();
  d.gamma_S = 0.5 * (e.gamma00 + e.gamma11) + e.gamma01;
  d.gamma_A = 0.5 * (e.gamma00 + e.gamma11) - e.gamma01;

  // The printed form attaches eta- to |S><G| and eta+ to |A><G|, and puts
  // +gt on |S><S|. Report wherever the derived matrix says otherwise.
  const double tol = 1e-12;
  const double eta_p = (e.etatilde0 + e.etatilde1) / std::numbers::sqrt2;
  const double eta_m = (e.etatilde0 - e.etatilde1) / std::numbers::sqrt2;
  if (std::abs(eta_p - eta_m) > tol) {
    form.diagnostics.push_back("drive labels: derived <S|H|G> = -eta+ = " + fmt(-eta_p) +
                               " and <A|H|G> = -eta- = " + fmt(-eta_m) +
                               "; printed form has eta- on |S> and eta+ on |A>");
  }
  if (std::abs(e.gtilde) > tol) {
    form.diagnostics.push_back("exchange sign: derived delta_S = D+ - gt = " + fmt(d.delta_S) +
                               ", delta_A = D+ + gt = " + fmt(d.delta_A) +
                               "; printed form has delta_S = D+ + gt, delta_A = D+ - gt");
  }
  return form;
}

ComplexMatrix dicke_hamiltonian(const DickeParams& d) {
  constexpr int E = static_cast<int>(DickeState::E);
  constexpr int S = static_cast<int>(DickeState::S);
  constexpr int A = static_cast<int>(DickeState::A);
  constexpr int G = static_cast<int>(DickeState::G);
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  h(E, E) = d.delta_E;
  h(S, S) = d.delta_S;
  h(A, A) = d.delta_A;
  h(A, S) = h(S, A) = d.delta_minus;
  h(S, G) = h(G, S) = -d.eta_plus;
  h(S, E) = h(E, S) = -d.eta_plus;
  h(A, G) = h(G, A) = -d.eta_minus;
  h(A, E) = h(E, A) = d.eta_minus;
  return h;
}

DickePopulations dicke_populations(const DensityMatrix& rho2q) {
  if (rho2q.dim() != 4) {
    throw DimensionError("dicke_populations: expected a two-qubit state");
  }
  const ComplexMatrix p = dicke_basis().adjoint() * rho2q.matrix() * dicke_basis();
  return DickePopulations{p(0, 0).real(), p(1, 1).real(), p(2, 2).real(), p(3, 3).real()};
}

double rabi_frequency(double delta_minus, double eta) {
  return std::hypot(0.5 * delta_minus, eta);
}

DickePopulations analytic_populations(double delta_minus, double eta, double t) {
  const double omega = rabi_frequency(delta_minus, eta);
  if (!(omega > 0.0)) {
    throw ParameterError("analytic_populations: Rabi frequency is zero");
  }
  const double d = 0.5 * delta_minus;
  const double d2 = d * d;
  const double e2 = eta * eta;
  const double o2 = omega * omega;
  const double o4 = o2 * o2;
  const double c2 = std::cos(2.0 * t * omega);
  const double s2 = std::sin(2.0 * t * omega);
  const double s1 = std::sin(t * omega);

  DickePopulations p;
  p.e = (d2 + e2 * c2 - o2) * (d2 + e2 * c2 - o2) / (4.0 * o4);
  p.s = e2 * s2 * s2 / (2.0 * o2);
  p.a = 2.0 * d2 * e2 * s1 * s1 * s1 * s1 / o4;
  p.g = (d2 + e2 * c2 + o2) * (d2 + e2 * c2 + o2) / (4.0 * o4);
  return p;
}

}  // namespace ddesim
