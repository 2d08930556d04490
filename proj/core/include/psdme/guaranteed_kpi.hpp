#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psdme/bands.hpp"

namespace psdme {

/// Smallest x at which the band's lower bound reaches 1 - gamma, i.e. the
/// KPI level certifiable at test-time reliability 1 - gamma. nullopt when
/// the lower bound saturates below 1 - gamma. Requires gamma in (0, 1).
std::optional<double> best_guaranteed_kpi(const ConfidenceBand& band, double gamma);

struct NamedBand {
  std::string config_id;
  ConfidenceBand band;
};

struct GuaranteedEntry {
  std::string config_id;
  std::optional<double> x_star;
};

/// Per-configuration guaranteed KPI levels plus their minimum.
struct GuaranteedKpi {
  double gamma = 0.0;
  std::vector<GuaranteedEntry> per_config;
  std::optional<std::string> overall_id;  // nullopt iff every entry is nullopt
  std::optional<double> overall_x_star;
};

/// Evaluates best_guaranteed_kpi for every band and takes the minimum over
/// configurations with a defined level (ties resolved toward the
/// lexicographically smallest id). Requires a nonempty band list.
GuaranteedKpi best_over_selection(const std::vector<NamedBand>& bands, double gamma);

}  // namespace psdme
