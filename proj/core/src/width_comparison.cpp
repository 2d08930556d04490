#include "psdme/width_comparison.hpp"

#include <cmath>
#include <stdexcept>

#include "psdme/bands.hpp"
#include "psdme/lambert_w.hpp"

namespace psdme {

WidthComparison width_comparison(std::size_t n, std::size_t n_eval,
                                 std::size_t num_configs, std::size_t selected_size,
                                 double delta, const PowerCalibrator& calibrator) {
  if (n_eval < 1 || n_eval > n) {
    throw std::invalid_argument("need 1 <= n_eval <= n");
  }
  const double ss_term = detail::ss_log_term(num_configs, selected_size, delta);
  const double ps_term = detail::ps_log_term(num_configs, selected_size, delta, calibrator);

  WidthComparison out;
  out.ratio = static_cast<double>(n_eval) / static_cast<double>(n);
  out.crossover_ratio = ss_term / ps_term;
  const double rate = delta * static_cast<double>(selected_size) /
                      static_cast<double>(num_configs);
  out.envelope_crossover_ratio =
      ss_term / (std::log(2.0) - lambert_w_lower(-rate * std::exp(-1.0)));
  out.ss_width = ss_band_width(n_eval, num_configs, selected_size, delta);
  out.ps_width = ps_band_width(n, num_configs, selected_size, delta, calibrator);
  out.ps_narrower = out.ps_width < out.ss_width;

  // The threshold route must agree with the width route except inside a
  // rounding neighborhood of the crossover itself.
  const bool by_threshold = out.ratio < out.crossover_ratio;
  const bool near_crossover =
      std::abs(out.ss_width - out.ps_width) <= 1e-9 * std::max(1.0, out.ss_width) ||
      std::abs(out.crossover_ratio - out.ratio) <= 1e-9;
  if (by_threshold != out.ps_narrower && !near_crossover) {
    throw std::logic_error("width comparison routes disagree away from the crossover");
  }
  return out;
}

std::vector<WidthSweepRow> width_sweep(double start, double stop, double step,
                                       std::size_t n, std::size_t num_configs,
                                       std::size_t selected_size, double delta,
                                       const PowerCalibrator& calibrator) {
  if (!(step > 0.0) || !(stop >= start) || start < 0.0 || stop > 1.0) {
    throw std::invalid_argument("sweep needs 0 <= start <= stop <= 1 and step > 0");
  }
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const double ss_term = detail::ss_log_term(num_configs, selected_size, delta);
  const double ps_term = detail::ps_log_term(num_configs, selected_size, delta, calibrator);
  const double ps = detail::width_from_log_term(ps_term, static_cast<double>(n));

  const auto count = static_cast<std::size_t>(
      std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<WidthSweepRow> rows;
  rows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double ratio = start + static_cast<double>(i) * step;
    rows.push_back({ratio,
                    detail::width_from_log_term(ss_term, ratio * static_cast<double>(n)),
                    ps});
  }
  return rows;
}

}  // namespace psdme
