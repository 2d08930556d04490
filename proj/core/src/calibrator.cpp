#include "psdme/calibrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psdme/lambert_w.hpp"

namespace psdme {

namespace {

void check_pvalue(double p) {
  if (!(p > 0.0) || !(p <= 1.0)) {
    throw std::domain_error("p-value must lie in (0, 1]");
  }
}

void check_threshold(double y) {
  if (!(y >= 1.0)) {
    throw std::domain_error("calibrator inverse threshold must be >= 1");
  }
}

}  // namespace

PowerCalibrator::PowerCalibrator(double tau) : tau_(tau) {
  if (!(tau > 0.0) || !(tau < 1.0)) {
    throw std::invalid_argument("calibrator tau must lie in (0, 1)");
  }
}

double PowerCalibrator::operator()(double p) const {
  check_pvalue(p);
  return (1.0 - tau_) * std::pow(p, -tau_);
}

double PowerCalibrator::inverse(double y) const {
  check_threshold(y);
  return std::min(1.0, std::exp(log_inverse(y)));
}

double PowerCalibrator::log_inverse(double y) const {
  check_threshold(y);
  return std::min(0.0, (std::log1p(-tau_) - std::log(y)) / tau_);
}

double vovk_sellke(double p) {
  check_pvalue(p);
  if (p > std::exp(-1.0)) return 1.0;
  return -std::exp(-1.0) / (p * std::log(p));
}

double vovk_sellke_inverse(double y) {
  check_threshold(y);
  return std::exp(lambert_w_lower(-std::exp(-1.0) / y));
}

double optimal_tau(double delta, std::size_t num_configs, std::size_t selected_size) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (selected_size < 1 || selected_size > num_configs) {
    throw std::invalid_argument("selected_size must lie in [1, num_configs]");
  }
  const double rate = delta * static_cast<double>(selected_size) /
                      static_cast<double>(num_configs);
  if (!(rate < 1.0)) {
    throw std::invalid_argument("delta * selected_size must be below num_configs");
  }
  const double w = lambert_w_lower(-rate * std::exp(-1.0));
  return std::max(1e-9, 1.0 + 1.0 / w);
}

}  // namespace psdme
