#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "psdme/calibrator.hpp"
#include "psdme/empirical_cdf.hpp"
#include "psdme/true_cdf.hpp"

namespace psdme {

enum class BandMethod { SsDme, Naive, PsDme, BerkJones };

/// Canonical method string: "ss-dme", "naive", "ps-dme", "berk-jones".
std::string_view band_method_name(BandMethod method);
BandMethod band_method_from_name(std::string_view name);

/// Provenance attached to every band.
struct BandMeta {
  std::size_t num_configs = 0;   // candidate pool size K
  std::size_t selected_size = 0; // realized selection size
  double delta = 0.0;            // FCR target (uniform methods)
  std::optional<double> tau;     // calibrator parameter (ps-dme)
  std::optional<double> alpha;   // per-band level (berk-jones)
  std::size_t n = 0;             // samples behind the ECDF
  /// Set when tau came from optimal_tau but the selection size is
  /// data-dependent, where the optimality argument is only a heuristic.
  bool tau_heuristic = false;
};

/// Uniform or pointwise confidence band around an empirical CDF.
///
/// Uniform bands store a radius and evaluate to
///   [max(0, F(x) - radius), min(1, F(x) + radius)];
/// pointwise bands (Berk-Jones) store per-plateau bounds for plateaus
/// 0..n. Both evaluations are nondecreasing in x and stay within [0, 1].
class ConfidenceBand {
 public:
  static ConfidenceBand uniform(EmpiricalCdf ecdf, BandMethod method,
                                double radius, BandMeta meta);
  /// lower/upper must each hold n + 1 nondecreasing values in [0, 1] with
  /// lower[i] <= upper[i]; entry i applies to plateau i.
  static ConfidenceBand pointwise(EmpiricalCdf ecdf, std::vector<double> lower,
                                  std::vector<double> upper, BandMeta meta);

  BandMethod method() const noexcept { return method_; }
  const EmpiricalCdf& ecdf() const noexcept { return ecdf_; }
  const BandMeta& meta() const noexcept { return meta_; }
  bool is_uniform() const noexcept { return radius_.has_value(); }
  std::optional<double> radius() const noexcept { return radius_; }
  const std::vector<double>& pointwise_lower() const { return lower_; }
  const std::vector<double>& pointwise_upper() const { return upper_; }

  double lower(double x) const;
  double upper(double x) const;
  double plateau_lower(std::size_t i) const;
  double plateau_upper(std::size_t i) const;

 private:
  ConfidenceBand(EmpiricalCdf ecdf, BandMethod method, BandMeta meta)
      : ecdf_(std::move(ecdf)), method_(method), meta_(std::move(meta)) {}

  EmpiricalCdf ecdf_;
  BandMethod method_;
  BandMeta meta_;
  std::optional<double> radius_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Radius of the plain two-sided DKW band at level alpha:
/// sqrt(log(2 / alpha) / (2 n)).
double dkw_radius(std::size_t n, double alpha);

/// Sample-splitting band radius sqrt(log(2K / (delta |S|)) / (2 n_eval)),
/// evaluated on the evaluation-split sample size.
double ss_band_width(std::size_t n_eval, std::size_t num_configs,
                     std::size_t selected_size, double delta);

/// Same formula evaluated with the full sample size; no post-selection
/// correction, so coverage is not guaranteed after data-dependent
/// selection.
double naive_band_width(std::size_t n, std::size_t num_configs,
                        std::size_t selected_size, double delta);

/// Full-reuse band radius sqrt(log(2 / f^{-1}(K / (delta |S|))) / (2 n)),
/// where f^{-1} is the calibrator's generalized inverse.
double ps_band_width(std::size_t n, std::size_t num_configs,
                     std::size_t selected_size, double delta,
                     const PowerCalibrator& calibrator);

namespace detail {
/// log(2K / (delta |S|)): the log term of the splitting/naive radius.
double ss_log_term(std::size_t num_configs, std::size_t selected_size, double delta);
/// log(2 / f^{-1}(K / (delta |S|))): the log term of the full-reuse radius.
double ps_log_term(std::size_t num_configs, std::size_t selected_size, double delta,
                   const PowerCalibrator& calibrator);
/// sqrt(log_term / (2 n)) with a real-valued sample count; used by the
/// split-ratio sweep where n_eval = ratio * n is not an integer.
double width_from_log_term(double log_term, double effective_n);
}  // namespace detail

struct BandParams {
  std::size_t num_configs = 0;
  std::size_t selected_size = 0;
  double delta = 0.0;
  std::optional<PowerCalibrator> calibrator;  // required for PsDme
  bool tau_heuristic = false;
};

/// Uniform band for the given method (SsDme, Naive or PsDme). For SsDme the
/// ECDF must come from the evaluation split. Berk-Jones bands are built by
/// bj_band instead.
ConfidenceBand build_band(EmpiricalCdf ecdf, BandMethod method, const BandParams& params);

/// sup_x |F_hat(x) - F(x)|, computed exactly over the 2n order-statistic
/// candidates; table CDFs are additionally probed at their knots.
double kolmogorov_distance(const EmpiricalCdf& ecdf, const TrueCdf& f);

/// min(1, 2 exp(-2 n t^2)).
double dkw_pvalue(std::size_t n, double t);

/// calibrate(dkw_pvalue(n, kolmogorov_distance(ecdf, f))).
double evalue_for_candidate(const EmpiricalCdf& ecdf, const TrueCdf& f,
                            const PowerCalibrator& calibrator);

/// Test-inversion membership: true iff the candidate's e-value is strictly
/// below K / (delta |S|).
bool confidence_set_contains(const EmpiricalCdf& ecdf, const TrueCdf& f,
                             const PowerCalibrator& calibrator,
                             std::size_t num_configs, std::size_t selected_size,
                             double delta);

/// Same membership decided through the band radius: true iff
/// kolmogorov_distance < ps_band_width. Algebraically equivalent to
/// confidence_set_contains; both routes are kept so they can be checked
/// against each other.
bool confidence_set_contains_by_radius(const EmpiricalCdf& ecdf, const TrueCdf& f,
                                       const PowerCalibrator& calibrator,
                                       std::size_t num_configs,
                                       std::size_t selected_size, double delta);

/// True iff some x has F(x) outside [lower(x), upper(x)]. Uniform bands are
/// decided exactly via the Kolmogorov distance; pointwise bands check every
/// plateau segment at its endpoints and one-sided limits.
bool miscovered(const ConfidenceBand& band, const TrueCdf& f);

}  // namespace psdme
