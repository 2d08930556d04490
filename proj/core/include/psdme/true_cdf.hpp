#pragma once

#include <cstddef>
#include <vector>

namespace psdme {

/// Reference CDF used for simulation truth and holdout proxies.
///
/// Three kinds are supported:
///  - gaussian(mean, stddev): exact closed form;
///  - uniform01: identity on [0, 1];
///  - table(knots, values): monotone linear interpolation between knots,
///    0 left of the first knot and 1 right of the last.
class TrueCdf {
 public:
  enum class Kind { Gaussian, Uniform01, Table };

  static TrueCdf gaussian(double mean, double stddev);
  static TrueCdf uniform01();
  static TrueCdf table(std::vector<double> knots, std::vector<double> values);

  Kind kind() const noexcept { return kind_; }

  /// F(x). Total over all reals; results are clamped to [0, 1].
  double operator()(double x) const;

  /// Left limit sup_{t < x} F(t). Coincides with operator() wherever the
  /// CDF is continuous; differs only at table endpoints and duplicate
  /// knots.
  double left_limit(double x) const;

  // Table accessors; only meaningful for Kind::Table.
  const std::vector<double>& knots() const noexcept { return knots_; }
  const std::vector<double>& values() const noexcept { return values_; }
  // Gaussian accessors; only meaningful for Kind::Gaussian.
  double mean() const noexcept { return mean_; }
  double stddev() const noexcept { return stddev_; }

 private:
  TrueCdf() = default;

  Kind kind_ = Kind::Uniform01;
  double mean_ = 0.0;
  double stddev_ = 1.0;
  std::vector<double> knots_;
  std::vector<double> values_;
};

}  // namespace psdme
