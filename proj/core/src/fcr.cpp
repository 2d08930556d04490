#include "psdme/fcr.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "psdme/rng.hpp"

namespace psdme {

double fcp(const std::vector<bool>& miscoverage_flags) noexcept {
  if (miscoverage_flags.empty()) return 0.0;
  std::size_t hits = 0;
  for (bool flag : miscoverage_flags) hits += flag ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(miscoverage_flags.size());
}

Scenario gaussian_grid_scenario(std::size_t num_configs, std::size_t n_per_config) {
  if (num_configs == 0) throw std::invalid_argument("need at least one config");
  std::vector<double> means(num_configs);
  for (std::size_t k = 0; k < num_configs; ++k) {
    means[k] = num_configs == 1
                   ? 0.0
                   : static_cast<double>(k) / static_cast<double>(num_configs - 1);
  }
  return gaussian_grid_scenario(num_configs, n_per_config, std::move(means),
                                std::vector<double>(num_configs, 1.0));
}

Scenario gaussian_grid_scenario(std::size_t num_configs, std::size_t n_per_config,
                                std::vector<double> means, std::vector<double> stddevs) {
  Scenario s;
  s.name = "gaussian-grid";
  s.params = {{"k", static_cast<double>(num_configs)},
              {"n", static_cast<double>(n_per_config)}};
  s.generate = [num_configs, n_per_config, means = std::move(means),
                stddevs = std::move(stddevs)](std::uint64_t trial_seed) {
    return synth_gaussian_grid(num_configs, means, stddevs, n_per_config, trial_seed);
  };
  return s;
}

Scenario linear_gaussian_scenario(SynthLinearGaussianConfig cfg) {
  Scenario s;
  s.name = "linear-gaussian";
  s.params = {{"k", static_cast<double>(cfg.lambda_grid.size())},
              {"n", static_cast<double>(cfg.n_cal)},
              {"n_train", static_cast<double>(cfg.n_train)},
              {"d", static_cast<double>(cfg.covariate_dim)},
              {"holdout", static_cast<double>(cfg.holdout_size)}};
  s.generate = [cfg = std::move(cfg)](std::uint64_t trial_seed) mutable {
    SynthLinearGaussianConfig trial_cfg = cfg;
    trial_cfg.seed = trial_seed;
    return synth_linear_gaussian(trial_cfg);
  };
  return s;
}

FcrReport simulate_fcr(const Scenario& scenario, const PipelineOptions& options,
                       std::size_t trials, unsigned workers) {
  if (!scenario.generate) throw std::invalid_argument("scenario has no generator");
  if (trials < 1) throw std::invalid_argument("need at least one trial");

  std::vector<double> fcp_values(trials, 0.0);
  std::vector<double> selected_sizes(trials, 0.0);
  std::vector<double> radius_sums(trials, 0.0);
  std::vector<std::size_t> radius_counts(trials, 0);

  std::mutex error_mutex;
  std::exception_ptr first_error;

  const auto run_trial = [&](std::size_t trial) {
    const std::uint64_t data_seed = derive_stream(options.seed, 2 * trial);
    const std::uint64_t split_seed = derive_stream(options.seed, 2 * trial + 1);
    auto [data, truth] = scenario.generate(data_seed);

    PipelineOptions trial_options = options;
    trial_options.gamma_list.clear();
    trial_options.seed = split_seed;
    const PipelineResult res = evaluate_pipeline(data, &truth, trial_options);

    fcp_values[trial] = res.fcp.value_or(0.0);
    selected_sizes[trial] = static_cast<double>(res.selection.size);
    for (const auto& item : res.bands) {
      if (item.band.radius()) {
        radius_sums[trial] += *item.band.radius();
        ++radius_counts[trial];
      }
    }
  };

  const auto run_range = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t t = begin; t < end; ++t) run_trial(t);
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  const unsigned used = std::max(1u, std::min<unsigned>(workers, trials));
  if (used == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(used);
    const std::size_t chunk = (trials + used - 1) / used;
    for (unsigned w = 0; w < used; ++w) {
      const std::size_t begin = static_cast<std::size_t>(w) * chunk;
      const std::size_t end = std::min(trials, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  FcrReport report;
  report.trials = trials;
  report.fcp_values = std::move(fcp_values);
  report.method = std::string(band_method_name(options.method));
  report.scenario_name = scenario.name;
  report.scenario_params = scenario.params;
  report.seed = options.seed;

  double mean = 0.0;
  for (double v : report.fcp_values) mean += v;
  mean /= static_cast<double>(trials);
  report.fcr_estimate = mean;
  if (trials > 1) {
    double ss = 0.0;
    for (double v : report.fcp_values) ss += (v - mean) * (v - mean);
    const double sample_var = ss / static_cast<double>(trials - 1);
    report.std_error = std::sqrt(sample_var / static_cast<double>(trials));
  }

  double size_sum = 0.0;
  double radius_sum = 0.0;
  std::size_t radius_count = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    size_sum += selected_sizes[t];
    radius_sum += radius_sums[t];
    radius_count += radius_counts[t];
  }
  report.avg_selected_size = size_sum / static_cast<double>(trials);
  report.avg_band_radius = radius_count == 0
                               ? std::numeric_limits<double>::quiet_NaN()
                               : radius_sum / static_cast<double>(radius_count);
  return report;
}

}  // namespace psdme
