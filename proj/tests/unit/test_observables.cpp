#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ddesim/error.hpp"
#include "ddesim/models.hpp"
#include "ddesim/observables.hpp"
#include "oracles.hpp"

using namespace ddesim;

namespace {

ComplexVector antisymmetric() {
  ComplexVector a(4);
  a << 0.0, -1.0, 1.0, 0.0;
  return a / std::numbers::sqrt2;
}

ComplexMatrix werner(double p) {
  const ComplexVector a = antisymmetric();
  return p * a * a.adjoint() + (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
}

// 1 - exp(-tau/50) cos(2 pi f tau) sampled on [0, tau_max].
CorrelationTrace synthetic(double f, double tau_max, int n) {
  CorrelationTrace t;
  for (int k = 0; k < n; ++k) {
    const double tau = tau_max * k / (n - 1);
    t.taus.push_back(tau);
    t.normalized.push_back(1.0 - std::exp(-tau / 50.0) * std::cos(2.0 * std::numbers::pi * f * tau));
  }
  t.raw = t.normalized;
  t.asymptote = 1.0;
  t.g2_zero = t.normalized.front();
  return t;
}

FullModelParams fig4(double eta0) {
  FullModelParams p;
  p.delta0 = 0.02;
  p.delta1 = -0.02;
  p.eta0 = eta0;
  return p;
}

}  // namespace

TEST(Concurrence, KnownStates) {
  const auto l = SpaceLayout::two_qubits();
  EXPECT_NEAR(concurrence(DensityMatrix::pure(l, antisymmetric())).value, 1.0, 1e-12);
  EXPECT_NEAR(concurrence(DensityMatrix::basis(l, 0)).value, 0.0, 1e-12);
  EXPECT_NEAR(concurrence(ComplexMatrix::Identity(4, 4) / 4.0).value, 0.0, 1e-12);
}

TEST(Concurrence, WernerClosedForm) {
  for (double p : {0.2, 0.5, 0.9}) {
    const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
    EXPECT_NEAR(concurrence(werner(p)).value, expected, 1e-9) << "p=" << p;
    EXPECT_NEAR(oracle::wootters_eig(werner(p)), expected, 1e-9) << "p=" << p;
  }
}

TEST(Concurrence, PureStatesMatchClosedForm) {
  std::mt19937_64 rng(30);
  for (int k = 0; k < 100; ++k) {
    const ComplexVector psi = oracle::random_pure(4, rng);
    const ConcurrenceResult r = concurrence(ComplexMatrix(psi * psi.adjoint()));
    EXPECT_NEAR(r.value, oracle::pure_concurrence(psi), 1e-9);
  }
}

TEST(Concurrence, MixedStatesMatchEigenOracle) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 50; ++k) {
    // mix of a random pure state and noise, so both zero and nonzero occur
    const ComplexVector psi = oracle::random_pure(4, rng);
    const double w = 0.3 + 0.7 * (k / 49.0);
    const ComplexMatrix rho = w * psi * psi.adjoint() + (1.0 - w) * oracle::random_density(4, rng);
    const ConcurrenceResult r = concurrence(rho);
    EXPECT_NEAR(r.value, oracle::wootters_eig(rho), 1e-7);
    for (std::size_t j = 1; j < 4; ++j) EXPECT_GE(r.lambdas[j - 1], r.lambdas[j]);
    EXPECT_GE(r.lambdas[3], 0.0);
  }
}

TEST(Concurrence, LocalUnitaryInvariance) {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix rho = 0.7 * werner(0.8) + 0.3 * oracle::random_density(4, rng);
    const ComplexMatrix u = oracle::kron(oracle::random_unitary(2, rng), oracle::random_unitary(2, rng));
    EXPECT_NEAR(concurrence(rho).value, concurrence(ComplexMatrix(u * rho * u.adjoint())).value, 1e-9);
  }
}

TEST(Concurrence, LiteralVariantSquaresLambdas) {
  const ConcurrenceResult w = concurrence(werner(0.9));
  const ConcurrenceResult l = concurrence(werner(0.9), ConcurrenceVariant::LiteralEigenvalues);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(l.lambdas[j], w.lambdas[j] * w.lambdas[j], 1e-12);
  const auto& x = l.lambdas;
  EXPECT_NEAR(l.value, std::max(0.0, x[0] - x[1] - x[2] - x[3]), 1e-12);
}

TEST(Concurrence, RejectsBadInput) {
  EXPECT_THROW(concurrence(ComplexMatrix::Identity(3, 3) / 3.0), DimensionError);
  EXPECT_THROW(concurrence(ComplexMatrix::Identity(4, 4)), NumericalError);
  ComplexMatrix skew = ComplexMatrix::Identity(4, 4) / 4.0;
  skew(0, 1) = 0.1;
  EXPECT_THROW(concurrence(skew), NumericalError);
  EXPECT_THROW(concurrence(DensityMatrix::basis(SpaceLayout({4}), 0)), DimensionError);
}

TEST(PostJump, SharedExcitation) {
  const auto l = SpaceLayout::qubits_and_boson(1);
  ComplexVector psi = ComplexVector::Zero(l.total_dim());
  // |eg,0> - |ge,0>: index (2 q0 + q1) * 2 + n
  psi(4) = 1.0;
  psi(2) = -1.0;
  const auto rho = DensityMatrix::pure(l, psi);
  const PostJump j = post_jump_state(rho, 0);
  EXPECT_NEAR(j.weight, 0.5, 1e-15);
  EXPECT_LT(max_abs(j.state.matrix() - DensityMatrix::basis(l, 0).matrix()), 1e-15);
  EXPECT_THROW(post_jump_state(rho, 2), DimensionError);
  EXPECT_THROW(post_jump_state(DensityMatrix::basis(l, 0), 1), EmitterDark);
}

TEST(PostJump, WeightIsExcitedPopulation) {
  std::mt19937_64 rng(33);
  const auto l = SpaceLayout::qubits_and_boson(2);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix rho(l, oracle::random_density(12, rng));
    for (int i = 0; i < 2; ++i) {
      const ComplexMatrix n = embed(sigma_plus() * sigma_minus(), i, l);
      EXPECT_NEAR(post_jump_state(rho, i).weight, rho.expectation(n), 1e-14);
    }
  }
}

TEST(G2, IdealDarkStateHasNoCoincidences) {
  FullModelParams p;
  const Liouvillian lv = build_full_model(p).liouvillian();
  const auto l = SpaceLayout::qubits_and_boson(p.n_max);
  ComplexVector psi = ComplexVector::Zero(l.total_dim());
  psi(2 * 3) = 1.0;   // |eg,0>
  psi(1 * 3) = -1.0;  // |ge,0>
  EXPECT_NEAR(g2_zero(lv, DensityMatrix::pure(l, psi)), 0.0, 1e-15);
}

TEST(G2, TraceConsistentWithZeroDelay) {
  const FullModelParams p = fig4(0.05);
  const Liouvillian l = build_full_model(p).liouvillian();
  const DensityMatrix rho = steady_state(l);
  const CorrelationTrace t = g2_trace(l, rho, default_tau_max(p), 1024);
  EXPECT_EQ(t.taus.size(), 1024u);
  EXPECT_DOUBLE_EQ(t.taus.front(), 0.0);
  EXPECT_DOUBLE_EQ(t.taus.back(), default_tau_max(p));
  EXPECT_NEAR(t.g2_zero, g2_zero(l, rho), 1e-12);
  EXPECT_LT(t.tail_deviation(), kTailTolerance);
  EXPECT_GE(t.min_normalized(), -1e-9);
  EXPECT_TRUE(t.dark_emitters.empty());
  for (std::size_t k = 0; k < t.raw.size(); ++k) EXPECT_NEAR(t.raw[k], t.normalized[k] * t.asymptote, 1e-12);
}

TEST(G2, DipAtBalancedDrive) {
  auto g2_at = [](double eta0) {
    const FullModelParams p = fig4(eta0);
    const Liouvillian l = build_full_model(p).liouvillian();
    return g2_zero(l, steady_state(l));
  };
  const double mid = g2_at(0.05);
  EXPECT_LT(mid, 0.2);
  EXPECT_GT(g2_at(0.04), 2.0 * mid);
  EXPECT_GT(g2_at(0.06), 2.0 * mid);
}

TEST(G2, RawTraceSymmetricUnderRelabeling) {
  FullModelParams p = fig4(0.045);
  p.g1 = 0.04;
  const double tau_max = default_tau_max(p);
  const Liouvillian la = build_full_model(p).liouvillian();
  const Liouvillian lb = build_full_model(p.with_qubits_swapped()).liouvillian();
  const CorrelationTrace a = g2_trace(la, steady_state(la), tau_max, 256);
  const CorrelationTrace b = g2_trace(lb, steady_state(lb), tau_max, 256);
  for (std::size_t k = 0; k < a.raw.size(); ++k) EXPECT_NEAR(a.raw[k], b.raw[k], 1e-9);
}

TEST(G2, RejectsBadGrid) {
  const Liouvillian l = build_full_model(FullModelParams{}).liouvillian();
  const DensityMatrix rho = steady_state(l);
  EXPECT_THROW(g2_trace(l, rho, 100.0, 1000), ParameterError);
  EXPECT_THROW(g2_trace(l, rho, 100.0, 128), ParameterError);
  EXPECT_THROW(g2_trace(l, rho, -1.0, 256), ParameterError);
  EXPECT_THROW(g2_trace(l, DensityMatrix::basis(SpaceLayout::two_qubits(), 0), 1.0, 256), DimensionError);
}

TEST(G2, BothEmittersDark) {
  FullModelParams p;
  p.eta0 = p.eta1 = 0.0;
  p.gamma_r0 = p.gamma_r1 = 0.01;
  const Liouvillian l = build_full_model(p).liouvillian();
  const DensityMatrix rho = steady_state(l);
  EXPECT_THROW(g2_zero(l, rho), EmitterDark);
  EXPECT_THROW(g2_trace(l, rho, 10.0, 256), EmitterDark);
}

TEST(G2, DefaultWindowCoversRabiAndDecay) {
  const FullModelParams p = fig4(0.05);
  const EffectiveParams e = adiabatic_eliminate(p);
  const double omega = rabi_frequency(0.5 * (e.dtilde0 - e.dtilde1), e.etatilde0);
  const double w = default_tau_max(p);
  EXPECT_GE(w, 10.0 * 2.0 * std::numbers::pi / omega - 1e-9);
  EXPECT_GE(w, 50.0 / std::min(e.gamma00, e.gamma11) - 1e-9);
}

TEST(Timescale, SyntheticPeak) {
  const int n = 4096;
  const double tau_max = 2000.0;
  const TimescaleResult r = extract_timescale(synthetic(0.02, tau_max, n), 50e12);
  const double bin = 1.0 / (n * tau_max / (n - 1));
  EXPECT_NEAR(r.peak_frequency, 0.02, bin);
  EXPECT_NEAR(r.period_native, 1.0 / r.peak_frequency, 1e-12);
  EXPECT_NEAR(r.period_seconds, r.period_native / 50e12, 1e-24);
  EXPECT_EQ(r.frequencies.size(), static_cast<std::size_t>(n / 2 + 1));
}

TEST(Timescale, DoublingSamplesIsStable) {
  const double tau_max = 2000.0;
  const TimescaleResult a = extract_timescale(synthetic(0.013, tau_max, 1024), 1.0);
  const TimescaleResult b = extract_timescale(synthetic(0.013, tau_max, 2048), 1.0);
  const double bin = 1.0 / (1024 * tau_max / 1023);
  EXPECT_LT(std::abs(a.peak_frequency - b.peak_frequency), bin);
}

TEST(Timescale, OverdampedHasNoPeak) {
  CorrelationTrace t = synthetic(0.0, 2000.0, 1024);
  for (std::size_t k = 0; k < t.taus.size(); ++k) t.normalized[k] = 1.0 - std::exp(-t.taus[k] / 50.0);
  EXPECT_THROW(extract_timescale(t, 1.0), NoOscillation);
}

TEST(Timescale, UnconvergedTailRejected) {
  CorrelationTrace t = synthetic(0.02, 2000.0, 1024);
  for (auto& v : t.normalized) v += 0.2;
  EXPECT_THROW(extract_timescale(t, 1.0), NumericalError);
  EXPECT_THROW(extract_timescale(t, -1.0), ParameterError);
}
