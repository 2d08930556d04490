#include "psdme/bands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "cdf_probes.hpp"

namespace psdme {

namespace {

void check_band_counts(std::size_t num_configs, std::size_t selected_size, double delta) {
  if (num_configs < 1 || selected_size < 1 || selected_size > num_configs) {
    throw std::invalid_argument("need 1 <= selected_size <= num_configs");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

std::string_view band_method_name(BandMethod method) {
  switch (method) {
    case BandMethod::SsDme: return "ss-dme";
    case BandMethod::Naive: return "naive";
    case BandMethod::PsDme: return "ps-dme";
    case BandMethod::BerkJones: return "berk-jones";
  }
  throw std::invalid_argument("unknown band method");
}

BandMethod band_method_from_name(std::string_view name) {
  if (name == "ss-dme" || name == "ss") return BandMethod::SsDme;
  if (name == "naive") return BandMethod::Naive;
  if (name == "ps-dme" || name == "ps") return BandMethod::PsDme;
  if (name == "berk-jones" || name == "bj") return BandMethod::BerkJones;
  throw std::invalid_argument("unknown band method '" + std::string(name) + "'");
}

ConfidenceBand ConfidenceBand::uniform(EmpiricalCdf ecdf, BandMethod method,
                                       double radius, BandMeta meta) {
  if (method == BandMethod::BerkJones) {
    throw std::invalid_argument("Berk-Jones bands are pointwise");
  }
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("band radius must be finite and nonnegative");
  }
  meta.n = ecdf.size();
  ConfidenceBand band(std::move(ecdf), method, std::move(meta));
  band.radius_ = radius;
  return band;
}

ConfidenceBand ConfidenceBand::pointwise(EmpiricalCdf ecdf, std::vector<double> lower,
                                         std::vector<double> upper, BandMeta meta) {
  const std::size_t n = ecdf.size();
  if (lower.size() != n + 1 || upper.size() != n + 1) {
    throw std::invalid_argument("pointwise bounds need one entry per plateau");
  }
  for (std::size_t i = 0; i <= n; ++i) {
    if (!(lower[i] >= 0.0) || !(upper[i] <= 1.0) || !(lower[i] <= upper[i])) {
      throw std::invalid_argument("pointwise bounds must satisfy 0 <= lower <= upper <= 1");
    }
    if (i > 0 && (lower[i] < lower[i - 1] || upper[i] < upper[i - 1])) {
      throw std::invalid_argument("pointwise bounds must be nondecreasing");
    }
  }
  meta.n = n;
  ConfidenceBand band(std::move(ecdf), BandMethod::BerkJones, std::move(meta));
  band.lower_ = std::move(lower);
  band.upper_ = std::move(upper);
  return band;
}

double ConfidenceBand::lower(double x) const {
  return plateau_lower(ecdf_.count_at_or_below(x));
}

double ConfidenceBand::upper(double x) const {
  return plateau_upper(ecdf_.count_at_or_below(x));
}

double ConfidenceBand::plateau_lower(std::size_t i) const {
  if (radius_) return clamp01(ecdf_.plateau_level(i) - *radius_);
  return lower_.at(i);
}

double ConfidenceBand::plateau_upper(std::size_t i) const {
  if (radius_) return clamp01(ecdf_.plateau_level(i) + *radius_);
  return upper_.at(i);
}

double dkw_radius(std::size_t n, double alpha) {
  if (n < 1) throw std::invalid_argument("sample count must be at least 1");
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

namespace detail {

double ss_log_term(std::size_t num_configs, std::size_t selected_size, double delta) {
  check_band_counts(num_configs, selected_size, delta);
  return std::log(2.0 * static_cast<double>(num_configs) /
                  (delta * static_cast<double>(selected_size)));
}

double ps_log_term(std::size_t num_configs, std::size_t selected_size, double delta,
                   const PowerCalibrator& calibrator) {
  check_band_counts(num_configs, selected_size, delta);
  const double y = static_cast<double>(num_configs) /
                   (delta * static_cast<double>(selected_size));
  if (!(y > 1.0)) {
    throw std::invalid_argument("delta * selected_size must be below num_configs");
  }
  return std::log(2.0) - calibrator.log_inverse(y);
}

double width_from_log_term(double log_term, double effective_n) {
  if (!(effective_n > 0.0)) {
    return std::numeric_limits<double>::infinity();
  }
  return std::sqrt(log_term / (2.0 * effective_n));
}

}  // namespace detail

double ss_band_width(std::size_t n_eval, std::size_t num_configs,
                     std::size_t selected_size, double delta) {
  if (n_eval < 1) throw std::invalid_argument("n_eval must be at least 1");
  return detail::width_from_log_term(detail::ss_log_term(num_configs, selected_size, delta),
                                     static_cast<double>(n_eval));
}

double naive_band_width(std::size_t n, std::size_t num_configs,
                        std::size_t selected_size, double delta) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  return detail::width_from_log_term(detail::ss_log_term(num_configs, selected_size, delta),
                                     static_cast<double>(n));
}

double ps_band_width(std::size_t n, std::size_t num_configs,
                     std::size_t selected_size, double delta,
                     const PowerCalibrator& calibrator) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  return detail::width_from_log_term(
      detail::ps_log_term(num_configs, selected_size, delta, calibrator),
      static_cast<double>(n));
}

ConfidenceBand build_band(EmpiricalCdf ecdf, BandMethod method, const BandParams& params) {
  BandMeta meta;
  meta.num_configs = params.num_configs;
  meta.selected_size = params.selected_size;
  meta.delta = params.delta;
  meta.tau_heuristic = params.tau_heuristic;

  double radius = 0.0;
  switch (method) {
    case BandMethod::SsDme:
      radius = ss_band_width(ecdf.size(), params.num_configs, params.selected_size,
                             params.delta);
      break;
    case BandMethod::Naive:
      radius = naive_band_width(ecdf.size(), params.num_configs, params.selected_size,
                                params.delta);
      break;
    case BandMethod::PsDme:
      if (!params.calibrator) {
        throw std::invalid_argument("ps-dme bands need a calibrator");
      }
      radius = ps_band_width(ecdf.size(), params.num_configs, params.selected_size,
                             params.delta, *params.calibrator);
      meta.tau = params.calibrator->tau();
      break;
    case BandMethod::BerkJones:
      throw std::invalid_argument("build Berk-Jones bands via bj_band");
  }
  return ConfidenceBand::uniform(std::move(ecdf), method, radius, std::move(meta));
}

double kolmogorov_distance(const EmpiricalCdf& ecdf, const TrueCdf& f) {
  double sup = 0.0;
  detail::visit_discrepancy_candidates(ecdf, f, [&](double fhat, double ftrue) {
    sup = std::max(sup, std::abs(fhat - ftrue));
  });
  return sup;
}

double dkw_pvalue(std::size_t n, double t) {
  if (n < 1) throw std::invalid_argument("sample count must be at least 1");
  if (!(t >= 0.0)) throw std::invalid_argument("distance must be nonnegative");
  return std::min(1.0, 2.0 * std::exp(-2.0 * static_cast<double>(n) * t * t));
}

double evalue_for_candidate(const EmpiricalCdf& ecdf, const TrueCdf& f,
                            const PowerCalibrator& calibrator) {
  return calibrator(dkw_pvalue(ecdf.size(), kolmogorov_distance(ecdf, f)));
}

bool confidence_set_contains(const EmpiricalCdf& ecdf, const TrueCdf& f,
                             const PowerCalibrator& calibrator,
                             std::size_t num_configs, std::size_t selected_size,
                             double delta) {
  check_band_counts(num_configs, selected_size, delta);
  const double y = static_cast<double>(num_configs) /
                   (delta * static_cast<double>(selected_size));
  if (!(y > 1.0)) {
    throw std::invalid_argument("delta * selected_size must be below num_configs");
  }
  return evalue_for_candidate(ecdf, f, calibrator) < y;
}

bool confidence_set_contains_by_radius(const EmpiricalCdf& ecdf, const TrueCdf& f,
                                       const PowerCalibrator& calibrator,
                                       std::size_t num_configs,
                                       std::size_t selected_size, double delta) {
  return kolmogorov_distance(ecdf, f) <
         ps_band_width(ecdf.size(), num_configs, selected_size, delta, calibrator);
}

bool miscovered(const ConfidenceBand& band, const TrueCdf& f) {
  if (band.is_uniform()) {
    // Clipping never excludes a CDF, so the uniform case reduces to the
    // sup-norm distance against the radius.
    return kolmogorov_distance(band.ecdf(), f) > *band.radius();
  }
  const auto& sorted = band.ecdf().sorted_values();
  const std::size_t n = sorted.size();
  for (std::size_t i = 0; i <= n; ++i) {
    const double seg_inf = i == 0 ? 0.0 : f(sorted[i - 1]);
    const double seg_sup = i == n ? 1.0 : f.left_limit(sorted[i]);
    if (seg_inf < band.plateau_lower(i) || seg_sup > band.plateau_upper(i)) {
      return true;
    }
  }
  return false;
}

}  // namespace psdme
