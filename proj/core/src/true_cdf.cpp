#include "psdme/true_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace psdme {

namespace {

double gaussian_cdf(double x, double mean, double stddev) {
  return 0.5 * std::erfc(-(x - mean) / (stddev * 1.4142135623730950488));
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

TrueCdf TrueCdf::gaussian(double mean, double stddev) {
  if (!(stddev > 0.0) || !std::isfinite(mean) || !std::isfinite(stddev)) {
    throw std::invalid_argument("gaussian CDF needs finite mean and positive stddev");
  }
  TrueCdf f;
  f.kind_ = Kind::Gaussian;
  f.mean_ = mean;
  f.stddev_ = stddev;
  return f;
}

TrueCdf TrueCdf::uniform01() {
  TrueCdf f;
  f.kind_ = Kind::Uniform01;
  return f;
}

TrueCdf TrueCdf::table(std::vector<double> knots, std::vector<double> values) {
  if (knots.empty() || knots.size() != values.size()) {
    throw std::invalid_argument("table CDF needs matching nonempty knots and values");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i]) || !std::isfinite(values[i])) {
      throw std::invalid_argument("table CDF entries must be finite");
    }
    if (values[i] < 0.0 || values[i] > 1.0) {
      throw std::invalid_argument("table CDF values must lie in [0, 1]");
    }
    if (i > 0 && (knots[i] < knots[i - 1] || values[i] < values[i - 1])) {
      throw std::invalid_argument("table CDF knots and values must be nondecreasing");
    }
  }
  TrueCdf f;
  f.kind_ = Kind::Table;
  f.knots_ = std::move(knots);
  f.values_ = std::move(values);
  return f;
}

double TrueCdf::operator()(double x) const {
  switch (kind_) {
    case Kind::Gaussian:
      return gaussian_cdf(x, mean_, stddev_);
    case Kind::Uniform01:
      return clamp01(x);
    case Kind::Table: {
      if (x < knots_.front()) return 0.0;
      if (x > knots_.back()) return 1.0;
      // Last segment whose left knot is <= x; duplicate knots resolve to
      // the rightmost (upper) value.
      const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
      const std::size_t hi = static_cast<std::size_t>(it - knots_.begin());
      if (hi == knots_.size()) return values_.back();
      const double x0 = knots_[hi - 1];
      const double x1 = knots_[hi];
      const double v0 = values_[hi - 1];
      const double v1 = values_[hi];
      if (!(x1 > x0)) return v1;
      return clamp01(v0 + (v1 - v0) * (x - x0) / (x1 - x0));
    }
  }
  return 0.0;
}

double TrueCdf::left_limit(double x) const {
  if (kind_ != Kind::Table) return (*this)(x);
  if (x <= knots_.front()) return 0.0;
  if (x > knots_.back()) return 1.0;
  // First knot >= x bounds the approach from the left; duplicate knots
  // resolve to the leftmost (lower) value.
  const auto it = std::lower_bound(knots_.begin(), knots_.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - knots_.begin());
  if (hi < knots_.size() && knots_[hi] == x) return values_[hi];
  const double x0 = knots_[hi - 1];
  const double x1 = knots_[hi];
  const double v0 = values_[hi - 1];
  const double v1 = values_[hi];
  if (!(x1 > x0)) return v0;
  return clamp01(v0 + (v1 - v0) * (x - x0) / (x1 - x0));
}

}  // namespace psdme
