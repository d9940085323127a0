#include "ddesim/truncation.hpp"

#include <cmath>

#include "ddesim/error.hpp"
#include "ddesim/observables.hpp"

namespace ddesim {

namespace {

struct Point {
  double concurrence;
  double g2_zero;
};

Point evaluate(FullModelParams p, int n_max) {
  p.n_max = n_max;
  const Liouvillian l = build_full_model(p).liouvillian();
  const DensityMatrix rho = steady_state(l);
  return {concurrence(reduce_to_qubits(rho)).value, g2_zero(l, rho)};
}

}  // namespace

TruncationDelta truncation_deltas(const FullModelParams& p, int n_max) {
  if (n_max < 1) throw ParameterError("truncation_check: n_max must be >= 1");
  const Point lo = evaluate(p, n_max);
  const Point hi = evaluate(p, n_max + 1);
  return {std::abs(hi.concurrence - lo.concurrence), std::abs(hi.g2_zero - lo.g2_zero)};
}

double truncation_check(const FullModelParams& p, int n_max) {
  return truncation_deltas(p, n_max).max();
}

}  // namespace ddesim
