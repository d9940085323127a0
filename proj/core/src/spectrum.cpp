#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "ddesim/error.hpp"
#include "ddesim/observables.hpp"

namespace ddesim {

namespace {

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace

TimescaleResult extract_timescale(const CorrelationTrace& trace, double gamma_a_abs) {
  const std::size_t n = trace.normalized.size();
  if (n < 8 || trace.taus.size() != n) {
    throw ParameterError("extract_timescale: trace is too short or malformed");
  }
  if (!(gamma_a_abs > 0.0)) {
    throw ParameterError("extract_timescale: gamma_a_abs must be positive");
  }
  const double dev = trace.tail_deviation();
  if (dev > kTailTolerance) {
    throw NumericalError("extract_timescale: trace tail deviates from 1 by " +
                         std::to_string(dev) + "; lengthen tau_max");
  }
  const double dt = trace.spacing();

  std::vector<double> windowed(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                           static_cast<double>(n - 1)));
    windowed[k] = (trace.normalized[k] - 1.0) * w;
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, windowed);

  const std::size_t half = n / 2;
  TimescaleResult out;
  out.frequencies.resize(half + 1);
  out.magnitudes.resize(half + 1);
  const double df = 1.0 / (static_cast<double>(n) * dt);
  for (std::size_t k = 0; k <= half; ++k) {
    out.frequencies[k] = df * static_cast<double>(k);
    out.magnitudes[k] = std::abs(spectrum[k]);
  }

  // A slowly relaxing, non-oscillating component leaks into the bins next to
  // DC without forming a maximum there, so only true local maxima qualify.
  const auto& mag = out.magnitudes;
  std::size_t peak = 0;
  for (std::size_t k = 1; k < half; ++k) {
    if (mag[k] > mag[k - 1] && mag[k] >= mag[k + 1] && (peak == 0 || mag[k] > mag[peak])) {
      peak = k;
    }
  }
  const double floor = median(std::vector<double>(mag.begin() + 1, mag.end()));
  if (peak == 0 || !(mag[peak] >= kMinPeakToMedian * floor)) {
    throw NoOscillation("extract_timescale: no spectral peak above the noise floor "
                        "(overdamped correlation)");
  }

  const double a = mag[peak - 1];
  const double b = mag[peak];
  const double c = mag[peak + 1];
  const double denom = a - 2.0 * b + c;
  const double offset = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
  out.peak_frequency = df * (static_cast<double>(peak) + offset);
  out.period_native = 1.0 / out.peak_frequency;
  out.period_seconds = out.period_native / gamma_a_abs;
  return out;
}

}  // namespace ddesim
