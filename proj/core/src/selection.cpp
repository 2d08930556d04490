#include "psdme/selection.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace psdme {

SelectionOutcome select_top_m(const KpiDataset& data, std::size_t m) {
  if (m < 1 || m > data.num_configs()) {
    throw std::invalid_argument("top-m selection needs 1 <= m <= number of configs");
  }
  std::vector<std::pair<double, std::string_view>> ranked;
  ranked.reserve(data.num_configs());
  for (const auto& entry : data.entries()) {
    const double mean = std::accumulate(entry.samples.begin(), entry.samples.end(), 0.0) /
                        static_cast<double>(entry.samples.size());
    ranked.emplace_back(mean, entry.id);
  }
  std::sort(ranked.begin(), ranked.end());  // ties fall back to lexicographic id

  SelectionOutcome out;
  out.rule = "top-m:" + std::to_string(m);
  out.size = m;
  out.selected_ids.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.selected_ids.emplace_back(ranked[i].second);
  }
  return out;
}

SelectionRule SelectionRule::top_m(std::size_t m) {
  SelectionRule rule;
  rule.descriptor = "top-m:" + std::to_string(m);
  rule.fixed_size = true;
  rule.apply = [m](const KpiDataset& data) { return select_top_m(data, m); };
  return rule;
}

SelectionRule SelectionRule::custom(
    std::string descriptor, std::function<SelectionOutcome(const KpiDataset&)> apply) {
  SelectionRule rule;
  rule.descriptor = std::move(descriptor);
  rule.fixed_size = false;
  rule.apply = std::move(apply);
  return rule;
}

}  // namespace psdme
