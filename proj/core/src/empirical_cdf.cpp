#include "psdme/empirical_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace psdme {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) {
    throw std::invalid_argument("empirical CDF needs at least one sample");
  }
  for (double v : sorted_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("empirical CDF sample is not finite");
    }
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const noexcept {
  return static_cast<double>(count_at_or_below(x)) / static_cast<double>(sorted_.size());
}

std::size_t EmpiricalCdf::count_at_or_below(double x) const noexcept {
  return static_cast<std::size_t>(
      std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin());
}

std::size_t EmpiricalCdf::count_below(double x) const noexcept {
  return static_cast<std::size_t>(
      std::lower_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin());
}

double EmpiricalCdf::plateau_level(std::size_t i) const {
  if (i > sorted_.size()) {
    throw std::out_of_range("plateau index exceeds sample count");
  }
  return static_cast<double>(i) / static_cast<double>(sorted_.size());
}

}  // namespace psdme
