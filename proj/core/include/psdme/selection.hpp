#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "psdme/dataset.hpp"

namespace psdme {

/// Result of a pre-selection rule applied to a dataset.
struct SelectionOutcome {
  std::vector<std::string> selected_ids;  // subset of the dataset ids
  std::string rule;                       // descriptor, e.g. "top-m:10"
  std::size_t size = 0;                   // == selected_ids.size()
};

/// The m configurations with the smallest sample means, ties broken by
/// lexicographic id. Requires 1 <= m <= number of configurations.
SelectionOutcome select_top_m(const KpiDataset& data, std::size_t m);

/// Pluggable selection rule. fixed_size marks rules whose selection size
/// does not depend on the data (top-m); the optimal-tau choice is exact
/// only for such rules and is flagged as heuristic otherwise.
struct SelectionRule {
  std::string descriptor;
  bool fixed_size = false;
  std::function<SelectionOutcome(const KpiDataset&)> apply;

  static SelectionRule top_m(std::size_t m);
  static SelectionRule custom(std::string descriptor,
                              std::function<SelectionOutcome(const KpiDataset&)> apply);
};

}  // namespace psdme
