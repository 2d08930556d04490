#pragma once

#include <cstddef>
#include <vector>

#include "psdme/calibrator.hpp"

namespace psdme {

/// Side-by-side comparison of the sample-splitting and full-reuse band
/// widths for one parameter point.
///
/// crossover_ratio is the split ratio n_eval/n below which full reuse is
/// strictly narrower for the given calibrator; envelope_crossover_ratio is the
/// same quantity at the envelope-attaining calibrator, expressed through
/// the lower Lambert W branch. ps_narrower holds iff ps_width < ss_width,
/// which coincides with ratio < crossover_ratio.
struct WidthComparison {
  double ratio = 0.0;
  double crossover_ratio = 0.0;
  double envelope_crossover_ratio = 0.0;
  double ps_width = 0.0;
  double ss_width = 0.0;
  bool ps_narrower = false;
};

/// Requires 1 <= n_eval <= n and delta * selected_size < num_configs.
/// The two routes deciding ps_narrower (width comparison and threshold
/// comparison) are cross-checked away from the crossover; a disagreement
/// outside a 1e-9 relative neighborhood of the crossover throws
/// std::logic_error.
WidthComparison width_comparison(std::size_t n, std::size_t n_eval,
                                 std::size_t num_configs, std::size_t selected_size,
                                 double delta, const PowerCalibrator& calibrator);

struct WidthSweepRow {
  double ratio = 0.0;
  double ss_width = 0.0;  // +inf at ratio 0
  double ps_width = 0.0;
};

/// Width curves over evaluation-split ratios start, start+step, ..., stop.
/// The splitting width uses the real-valued evaluation size ratio * n; the
/// full-reuse width is constant across rows.
std::vector<WidthSweepRow> width_sweep(double start, double stop, double step,
                                       std::size_t n, std::size_t num_configs,
                                       std::size_t selected_size, double delta,
                                       const PowerCalibrator& calibrator);

}  // namespace psdme
