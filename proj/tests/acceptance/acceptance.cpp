// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ddesim/error.hpp"
#include "ddesim/liouvillian.hpp"
#include "ddesim/models.hpp"
#include "ddesim/observables.hpp"
#include "ddesim/sweep.hpp"
#include "ddesim/truncation.hpp"
#include "oracles.hpp"

using namespace ddesim;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (n - 1);
  return v;
}

FullModelParams fig1() {
  FullModelParams p;
  p.delta0 = 0.02;
  p.delta1 = -0.02;
  p.eta0 = p.eta1 = 0.02;
  p.g0 = p.g1 = 0.02;
  p.gamma_r0 = p.gamma_r1 = 5e-9;
  p.gamma_d0 = p.gamma_d1 = 1e-8;
  return p;
}

// Defaults are the high-concurrence point: D0 = -D1 = 0.01, eta = g = 0.05.
FullModelParams fig2() { return FullModelParams{}; }

GridSpec detuning_map() {
  GridSpec s;
  s.axis1 = {"delta0", -0.05, 0.05, 9};
  s.axis2 = Axis{"delta1", -0.05, 0.05, 9};
  s.base = fig2();
  return s;
}

Outcome analytic_oracle() {
  const FullModelParams p = fig1();
  const EffectiveParams e = adiabatic_eliminate(p);
  const EffectiveModel m = build_effective_model(e);
  const Liouvillian l(m.layout, m.hamiltonian, {});
  const double dm = 0.5 * (e.dtilde0 - e.dtilde1);
  const double eta = e.etatilde0;
  const double omega = rabi_frequency(dm, eta);
  const auto times = linspace(0.0, 2.0 * 2.0 * std::numbers::pi / omega, 200);
  const EvolveResult r = evolve(l, DensityMatrix::basis(m.layout, 0), times);
  double err = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto n = dicke_populations(r.states[k]);
    const auto a = analytic_populations(dm, eta, times[k]);
    err = std::max({err, std::abs(n.e - a.e), std::abs(n.s - a.s), std::abs(n.a - a.a),
                    std::abs(n.g - a.g)});
  }
  return {err < 1e-6, fmt("max |numeric - analytic| = %.3g over 200 times (need < 1e-6)", err)};
}

Outcome fig1_consistency() {
  const FullModelParams p = fig1();
  const EffectiveParams e = adiabatic_eliminate(p);
  const double dm = 0.5 * (e.dtilde0 - e.dtilde1);
  const double eta = e.etatilde0;
  const double omega = rabi_frequency(dm, eta);
  const FullModel m = build_full_model(p);
  const Liouvillian l = m.liouvillian();
  const auto rho0 = DensityMatrix::basis(m.layout, 0);

  // rho_A ~ sin^4(t Omega) repeats after pi / Omega
  const auto times = linspace(0.0, std::numbers::pi / omega, 201);
  const EvolveResult r = evolve(l, rho0, times);
  double dev = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto n = dicke_populations(reduce_to_qubits(r.states[k]));
    const auto a = analytic_populations(dm, eta, times[k]);
    dev = std::max({dev, std::abs(n.e - a.e), std::abs(n.s - a.s), std::abs(n.a - a.a),
                    std::abs(n.g - a.g)});
  }
  const std::vector<double> late = {1e4};
  const double rho_a = dicke_populations(reduce_to_qubits(evolve(l, rho0, late).states[0])).a;
  return {dev < 0.05 && rho_a > 0.8,
          fmt("max deviation over first period = %.3g (need < 0.05); rho_A(1e4) = %.4f (need > 0.8)",
              dev, rho_a)};
}

Outcome near_unity_concurrence() {
  const Liouvillian l = build_full_model(fig2()).liouvillian();
  const double c = concurrence(reduce_to_qubits(steady_state(l))).value;
  return {c >= 0.9, fmt("C = %.6f (need >= 0.9)", c)};
}

Outcome anti_diagonal() {
  const SweepResult r = run_sweep(detuning_map());
  const int n = 9;
  const double step = 0.1 / (n - 1);
  auto at = [&](int i, int j) { return r.rows[static_cast<std::size_t>(i * n + j)]; };
  if (r.failed_count() > 0) return {false, "sweep had failed cells"};
  int off_band = 0;
  double worst_sum = 0.0;
  double asym = 0.0;
  for (int i = 0; i < n; ++i) {
    int best = 0;
    for (int j = 1; j < n; ++j) {
      if (*at(i, j).concurrence > *at(i, best).concurrence) best = j;
    }
    const double sum = std::abs(at(i, best).x1 + *at(i, best).x2);
    worst_sum = std::max(worst_sum, sum);
    if (sum > step * (1.0 + 1e-9)) ++off_band;
    for (int j = 0; j < n; ++j) asym = std::max(asym, std::abs(*at(i, j).concurrence - *at(j, i).concurrence));
  }
  return {off_band == 0 && asym <= 1e-8,
          fmt("rows off the band = %.0f, max |D0 + D1| at row maxima = %.4g (step %.4g); "
              "exchange asymmetry = %.3g (need <= 1e-8)",
              off_band, worst_sum, step, asym)};
}

Outcome antibunching_overlap() {
  const SweepResult r = run_sweep(detuning_map());
  const double corr = correlation_stats(r);
  double worst = 0.0;
  int entangled = 0;
  for (const auto& row : r.rows) {
    if (!row.ok() || *row.concurrence <= 0.9) continue;
    ++entangled;
    worst = std::max(worst, *row.g2_zero);
  }
  return {corr <= -0.5 && worst < 0.2,
          fmt("Pearson(g2(0), C) = %.4f (need <= -0.5); max g2(0) over %.0f cells with C > 0.9 = "
              "%.3g (need < 0.2)",
              corr, entangled, worst)};
}

Outcome dip_emergence() {
  const auto etas = linspace(0.04, 0.06, 21);
  std::vector<double> g2(etas.size());
  double tail = 0.0;
  for (std::size_t k = 0; k < etas.size(); ++k) {
    FullModelParams p;
    p.delta0 = 0.02;
    p.delta1 = -0.02;
    p.eta0 = etas[k];
    const Liouvillian l = build_full_model(p).liouvillian();
    const CorrelationTrace t = g2_trace(l, steady_state(l), default_tau_max(p));
    g2[k] = t.g2_zero;
    tail = std::max(tail, t.tail_deviation());
  }
  const double mid = g2[10];
  const double ratio = std::min(g2.front(), g2.back()) / mid;
  return {ratio >= 2.0 && tail <= 0.05,
          fmt("g2(0): %.3g at 0.04, %.3g at 0.05, %.3g at 0.06 (endpoint/centre ratio %.3g, need >= 2); ",
              g2.front(), mid, g2.back(), ratio) +
              fmt("worst tail deviation = %.3g (need <= 0.05)", tail)};
}

Outcome timescale_anchor() {
  FullModelParams p;
  p.eta0 = p.eta1 = 0.03;
  const Liouvillian l = build_full_model(p).liouvillian();
  const CorrelationTrace t = g2_trace(l, steady_state(l), default_tau_max(p));
  const TimescaleResult ts = extract_timescale(t, p.gamma_a_abs);
  const double ps = ts.period_seconds * 1e12;
  return {ps >= 3.0 && ps <= 30.0,
          fmt("period = %.4g /gamma_a = %.4g ps (need 3..30 ps)", ts.period_native, ps)};
}

Outcome numerical_hygiene() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> det(-0.1, 0.1);
  std::uniform_real_distribution<double> cpl(0.005, 0.1);
  const auto times = linspace(0.0, 200.0, 21);
  double residual = 0.0, min_eig = 1.0, drift = 0.0, gap = 0.0;
  for (int d = 0; d < 50; ++d) {
    FullModelParams p;
    p.delta0 = det(rng);
    p.delta1 = det(rng);
    p.delta_a = det(rng);
    p.g0 = cpl(rng);
    p.g1 = cpl(rng);
    p.eta0 = cpl(rng);
    p.eta1 = cpl(rng);
    const FullModel m = build_full_model(p);
    const Liouvillian l = m.liouvillian();
    const DensityMatrix rho = steady_state(l);
    residual = std::max(residual, max_abs(apply_liouvillian(l, rho)));
    min_eig = std::min(min_eig, rho.min_eigenvalue());
    const auto rho0 = DensityMatrix::basis(m.layout, 0);
    const EvolveResult a = evolve(l, rho0, times);
    drift = std::max(drift, a.max_trace_drift);
    if (d < 20) {
      const EvolveResult b = evolve_integrated(l, rho0, times);
      drift = std::max(drift, b.max_trace_drift);
      for (std::size_t k = 0; k < times.size(); ++k) {
        gap = std::max(gap, max_abs(a.states[k].matrix() - b.states[k].matrix()));
      }
    }
  }
  const TruncationDelta t = truncation_deltas(fig2(), 2);
  const bool ok = residual < 1e-10 && min_eig >= -1e-9 && drift <= 1e-9 && gap <= 1e-6 &&
                  t.concurrence < 1e-6 && t.g2_zero < 1e-6;
  return {ok, fmt("residual %.3g, min eig %.3g, trace drift %.3g, spectral-integrator gap %.3g; ",
                  residual, min_eig, drift, gap) +
                  fmt("truncation 2->3: dC %.3g, dg2 %.3g", t.concurrence, t.g2_zero)};
}

Outcome concurrence_oracle() {
  std::mt19937_64 rng(9);
  double pure = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto psi = oracle::random_pure(4, rng);
    pure = std::max(pure, std::abs(concurrence(ComplexMatrix(psi * psi.adjoint())).value -
                                   oracle::pure_concurrence(psi)));
  }
  ComplexVector a(4);
  a << 0.0, -1.0, 1.0, 0.0;
  a /= std::numbers::sqrt2;
  double werner = 0.0;
  for (double p : {0.2, 0.5, 0.9}) {
    const ComplexMatrix rho = p * a * a.adjoint() + (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
    werner = std::max(werner, std::abs(concurrence(rho).value - std::max(0.0, (3.0 * p - 1.0) / 2.0)));
  }
  return {pure <= 1e-9 && werner <= 1e-9,
          fmt("pure-state max error %.3g, Werner max error %.3g (need <= 1e-9)", pure, werner)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "analytic oracle equivalence", 1.0, analytic_oracle},
      {2, "full model tracks analytic populations", 10.0, fig1_consistency},
      {3, "near-unity steady-state concurrence", 5.0, near_unity_concurrence},
      {4, "anti-diagonal concurrence structure", 120.0, anti_diagonal},
      {5, "anti-bunching overlaps entanglement", 600.0, antibunching_overlap},
      {6, "zero-delay dip at balanced drive", 300.0, dip_emergence},
      {7, "anti-bunching timescale of order 10 ps", 60.0, timescale_anchor},
      {8, "numerical hygiene", 300.0, numerical_hygiene},
      {9, "concurrence oracle", 1.0, concurrence_oracle},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d: %s | %s | %.2f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name, o.detail.c_str(), secs, c.budget_seconds, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
