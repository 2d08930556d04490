#include "psdme/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "psdme/rng.hpp"

namespace psdme {

namespace {

std::string padded_id(const char* prefix, std::size_t index, std::size_t count) {
  std::size_t width = 1;
  for (std::size_t v = count > 0 ? count - 1 : 0; v >= 10; v /= 10) ++width;
  width = std::max<std::size_t>(width, 3);
  std::string digits = std::to_string(index);
  return std::string(prefix) + "-" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

/// Solves A x = b for symmetric positive definite A (row-major d x d) by
/// Cholesky factorization. Throws std::runtime_error when a pivot is not
/// strictly positive.
std::vector<double> solve_spd(std::vector<double> a, std::vector<double> b) {
  const std::size_t d = b.size();
  for (std::size_t j = 0; j < d; ++j) {
    double diag = a[j * d + j];
    for (std::size_t k = 0; k < j; ++k) diag -= a[j * d + k] * a[j * d + k];
    if (!(diag > 0.0)) {
      throw std::runtime_error("normal equations are singular");
    }
    const double root = std::sqrt(diag);
    a[j * d + j] = root;
    for (std::size_t i = j + 1; i < d; ++i) {
      double v = a[i * d + j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i * d + k] * a[j * d + k];
      a[i * d + j] = v / root;
    }
  }
  // L y = b
  for (std::size_t i = 0; i < d; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= a[i * d + k] * b[k];
    b[i] = v / a[i * d + i];
  }
  // L^T x = y
  for (std::size_t ir = d; ir-- > 0;) {
    double v = b[ir];
    for (std::size_t k = ir + 1; k < d; ++k) v -= a[k * d + ir] * b[k];
    b[ir] = v / a[ir * d + ir];
  }
  return b;
}

}  // namespace

std::pair<KpiDataset, std::vector<TrueCdf>> synth_gaussian_grid(
    std::size_t num_configs, const std::vector<double>& means,
    const std::vector<double>& stddevs, std::size_t n_per_config,
    std::uint64_t seed) {
  if (means.size() != num_configs || stddevs.size() != num_configs) {
    throw std::invalid_argument("means/stddevs must match num_configs");
  }
  if (num_configs == 0 || n_per_config == 0) {
    throw std::invalid_argument("num_configs and n_per_config must be at least 1");
  }
  for (double s : stddevs) {
    if (!(s > 0.0)) throw std::invalid_argument("stddevs must be strictly positive");
  }

  Rng rng(derive_stream(seed, 1));
  std::vector<ConfigSamples> entries;
  std::vector<TrueCdf> truths;
  entries.reserve(num_configs);
  truths.reserve(num_configs);
  for (std::size_t k = 0; k < num_configs; ++k) {
    ConfigSamples entry{padded_id("cfg", k, num_configs), {}};
    entry.samples.reserve(n_per_config);
    for (std::size_t i = 0; i < n_per_config; ++i) {
      entry.samples.push_back(means[k] + stddevs[k] * rng.gaussian());
    }
    entries.push_back(std::move(entry));
    truths.push_back(TrueCdf::gaussian(means[k], stddevs[k]));
  }
  return {KpiDataset(std::move(entries)), std::move(truths)};
}

std::pair<KpiDataset, std::vector<TrueCdf>> synth_linear_gaussian(
    const SynthLinearGaussianConfig& cfg) {
  if (cfg.covariate_dim == 0 || cfg.n_train == 0 || cfg.n_cal == 0 || cfg.holdout_size == 0) {
    throw std::invalid_argument("all counts must be at least 1");
  }
  if (cfg.lambda_grid.empty()) {
    throw std::invalid_argument("lambda_grid must be nonempty");
  }
  for (std::size_t k = 0; k < cfg.lambda_grid.size(); ++k) {
    if (!(cfg.lambda_grid[k] > 0.0)) {
      throw std::invalid_argument("lambda_grid must be strictly positive");
    }
    if (k > 0 && !(cfg.lambda_grid[k] > cfg.lambda_grid[k - 1])) {
      throw std::invalid_argument("lambda_grid must be strictly increasing");
    }
  }

  const std::size_t d = cfg.covariate_dim;
  const std::size_t num_configs = cfg.lambda_grid.size();

  Rng beta_rng(derive_stream(cfg.seed, 10));
  std::vector<double> beta(d);
  for (double& b : beta) b = beta_rng.gaussian();

  // Shared training set, accumulated into the normal equations.
  Rng train_rng(derive_stream(cfg.seed, 11));
  std::vector<double> gram(d * d, 0.0);
  std::vector<double> xty(d, 0.0);
  std::vector<double> u(d);
  for (std::size_t i = 0; i < cfg.n_train; ++i) {
    double v = train_rng.gaussian();  // noise drawn first, covariates next
    for (std::size_t j = 0; j < d; ++j) {
      u[j] = train_rng.gaussian();
      v += beta[j] * u[j];
    }
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c2 = 0; c2 <= r; ++c2) gram[r * d + c2] += u[r] * u[c2];
      xty[r] += u[r] * v;
    }
  }
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c2 = r + 1; c2 < d; ++c2) gram[r * d + c2] = gram[c2 * d + r];
  }

  std::vector<std::vector<double>> weights;
  weights.reserve(num_configs);
  for (double lambda : cfg.lambda_grid) {
    std::vector<double> a = gram;
    for (std::size_t j = 0; j < d; ++j) a[j * d + j] += lambda;
    weights.push_back(solve_spd(std::move(a), xty));
  }

  const auto squared_errors = [&](Rng& rng, std::size_t count,
                                  std::vector<std::vector<double>>& out) {
    for (std::size_t i = 0; i < count; ++i) {
      double v = rng.gaussian();
      for (std::size_t j = 0; j < d; ++j) {
        u[j] = rng.gaussian();
        v += beta[j] * u[j];
      }
      for (std::size_t k = 0; k < num_configs; ++k) {
        double pred = 0.0;
        for (std::size_t j = 0; j < d; ++j) pred += weights[k][j] * u[j];
        const double err = v - pred;
        out[k].push_back(err * err);
      }
    }
  };

  std::vector<std::vector<double>> kpi(num_configs);
  for (auto& col : kpi) col.reserve(cfg.n_cal);
  Rng cal_rng(derive_stream(cfg.seed, 12));
  squared_errors(cal_rng, cfg.n_cal, kpi);

  std::vector<std::vector<double>> holdout(num_configs);
  for (auto& col : holdout) col.reserve(cfg.holdout_size);
  Rng holdout_rng(derive_stream(cfg.seed, 13));
  squared_errors(holdout_rng, cfg.holdout_size, holdout);

  std::vector<ConfigSamples> entries;
  std::vector<TrueCdf> truths;
  entries.reserve(num_configs);
  truths.reserve(num_configs);
  const double m = static_cast<double>(cfg.holdout_size);
  for (std::size_t k = 0; k < num_configs; ++k) {
    entries.push_back({padded_id("lambda", k, num_configs), std::move(kpi[k])});
    std::sort(holdout[k].begin(), holdout[k].end());
    std::vector<double> levels(cfg.holdout_size);
    for (std::size_t i = 0; i < cfg.holdout_size; ++i) {
      levels[i] = static_cast<double>(i + 1) / m;
    }
    truths.push_back(TrueCdf::table(std::move(holdout[k]), std::move(levels)));
  }
  return {KpiDataset(std::move(entries)), std::move(truths)};
}

std::vector<double> log_spaced_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw std::invalid_argument("log grid needs 0 < lo < hi and count >= 2");
  }
  std::vector<double> grid(count);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                 static_cast<double>(count - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace psdme
