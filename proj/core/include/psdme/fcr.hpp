#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "psdme/dataset.hpp"
#include "psdme/pipeline.hpp"
#include "psdme/synth.hpp"
#include "psdme/true_cdf.hpp"

namespace psdme {

/// False coverage proportion: fraction of flags set, with an empty list
/// counting as 0.
double fcp(const std::vector<bool>& miscoverage_flags) noexcept;

/// A repeatable data-generating process with known truth. generate must be
/// pure in trial_seed and safe to call concurrently.
struct Scenario {
  std::string name;
  std::vector<std::pair<std::string, double>> params;  // for reports
  std::function<std::pair<KpiDataset, std::vector<TrueCdf>>(std::uint64_t trial_seed)>
      generate;
};

/// Gaussian grid: per-configuration means spread linearly over [0, 1] with
/// unit standard deviation, or explicit means/stddevs.
Scenario gaussian_grid_scenario(std::size_t num_configs, std::size_t n_per_config);
Scenario gaussian_grid_scenario(std::size_t num_configs, std::size_t n_per_config,
                                std::vector<double> means, std::vector<double> stddevs);

/// Ridge-regression scenario; cfg.seed is ignored (each trial derives its
/// own seed).
Scenario linear_gaussian_scenario(SynthLinearGaussianConfig cfg);

/// Monte Carlo miscoverage summary.
struct FcrReport {
  std::size_t trials = 0;
  std::vector<double> fcp_values;  // one per trial, in trial order
  double fcr_estimate = 0.0;       // mean of fcp_values
  double std_error = 0.0;          // sample stddev / sqrt(trials)
  std::string method;
  std::string scenario_name;
  std::vector<std::pair<std::string, double>> scenario_params;
  std::uint64_t seed = 0;
  double avg_selected_size = 0.0;
  /// Unweighted mean uniform band radius across selected configurations
  /// and trials; NaN for pointwise bands.
  double avg_band_radius = 0.0;
};

/// Repeats trials times: regenerate data from a per-trial substream, run
/// the selection and band construction prescribed by options (gamma_list is
/// ignored), evaluate miscoverage against the scenario truth, and record
/// the per-trial FCP. Trials may run on several workers; every trial is
/// keyed off its index, so the report is field-for-field identical for any
/// worker count.
FcrReport simulate_fcr(const Scenario& scenario, const PipelineOptions& options,
                       std::size_t trials, unsigned workers = 1);

}  // namespace psdme
