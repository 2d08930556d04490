#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "psdme/dataset.hpp"
#include "psdme/true_cdf.hpp"

namespace psdme {

/// Independent Gaussian KPI samples per configuration, paired with the
/// matching analytic CDFs. Deterministic given the seed.
std::pair<KpiDataset, std::vector<TrueCdf>> synth_gaussian_grid(
    std::size_t num_configs, const std::vector<double>& means,
    const std::vector<double>& stddevs, std::size_t n_per_config,
    std::uint64_t seed);

/// Ridge-regression KPI scenario: a shared linear-Gaussian training set, one
/// ridge fit per regularization strength, and squared prediction error on a
/// shared calibration set as the KPI.
struct SynthLinearGaussianConfig {
  std::size_t covariate_dim = 10;
  std::size_t n_train = 600;
  std::vector<double> lambda_grid;  // strictly increasing, strictly positive
  std::size_t n_cal = 20;
  std::uint64_t seed = 0;
  /// Size of the independent holdout used to tabulate a proxy for each
  /// configuration's true KPI CDF.
  std::size_t holdout_size = 100000;
};

/// One configuration per grid entry; configuration k holds the KPI samples
/// (V_i - g_k(U_i))^2 over the shared calibration points, so samples are
/// correlated across configurations. The returned CDFs are holdout-sample
/// table proxies. Deterministic given cfg.seed.
std::pair<KpiDataset, std::vector<TrueCdf>> synth_linear_gaussian(
    const SynthLinearGaussianConfig& cfg);

/// Logarithmically spaced grid of `count` values covering [lo, hi].
std::vector<double> log_spaced_grid(double lo, double hi, std::size_t count);

}  // namespace psdme
