#include "psdme/guaranteed_kpi.hpp"

#include <stdexcept>

namespace psdme {

std::optional<double> best_guaranteed_kpi(const ConfidenceBand& band, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in (0, 1)");
  }
  const double target = 1.0 - gamma;
  const auto& sorted = band.ecdf().sorted_values();
  // The lower bound is a right-continuous step function rising only at the
  // order statistics, so the infimum is attained at the first one whose
  // plateau reaches the target.
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (band.plateau_lower(i) >= target) return sorted[i - 1];
  }
  return std::nullopt;
}

GuaranteedKpi best_over_selection(const std::vector<NamedBand>& bands, double gamma) {
  if (bands.empty()) {
    throw std::invalid_argument("best_over_selection needs at least one band");
  }
  GuaranteedKpi out;
  out.gamma = gamma;
  out.per_config.reserve(bands.size());
  for (const auto& item : bands) {
    const auto x_star = best_guaranteed_kpi(item.band, gamma);
    out.per_config.push_back({item.config_id, x_star});
    if (!x_star) continue;
    const bool better =
        !out.overall_x_star || *x_star < *out.overall_x_star ||
        (*x_star == *out.overall_x_star && item.config_id < *out.overall_id);
    if (better) {
      out.overall_x_star = x_star;
      out.overall_id = item.config_id;
    }
  }
  return out;
}

}  // namespace psdme
