#pragma once

#include <cstddef>
#include <vector>

namespace psdme {

/// Step-function CDF estimate built from a finite sample.
///
/// Evaluation is right-continuous and nondecreasing, 0 below the smallest
/// sample and 1 at and above the largest; values live on the grid
/// {0, 1/n, ..., 1}. Ties are allowed and accumulate mass normally.
class EmpiricalCdf {
 public:
  /// Sorts a copy of the input. Throws std::invalid_argument on an empty
  /// sample or any non-finite value.
  explicit EmpiricalCdf(std::vector<double> samples);

  /// Fraction of samples <= x.
  double operator()(double x) const noexcept;

  /// Number of samples <= x; also the plateau index active at x.
  std::size_t count_at_or_below(double x) const noexcept;

  /// Number of samples strictly below x.
  std::size_t count_below(double x) const noexcept;

  std::size_t size() const noexcept { return sorted_.size(); }
  const std::vector<double>& sorted_values() const noexcept { return sorted_; }

  /// Plateau level i/n for i in [0, n]; plateau i is the value taken on
  /// [x_(i), x_(i+1)), with x_(0) = -inf and x_(n+1) = +inf.
  double plateau_level(std::size_t i) const;

  bool operator==(const EmpiricalCdf&) const = default;

 private:
  std::vector<double> sorted_;
};

}  // namespace psdme
