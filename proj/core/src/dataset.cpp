#include "psdme/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace psdme {

KpiDataset::KpiDataset(std::vector<ConfigSamples> entries)
    : entries_(std::move(entries)) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(entries_.size());
  for (const auto& entry : entries_) {
    if (entry.samples.empty()) {
      throw std::invalid_argument("config '" + entry.id + "' has no samples");
    }
    if (!seen.insert(entry.id).second) {
      throw std::invalid_argument("duplicate config id '" + entry.id + "'");
    }
    for (double v : entry.samples) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("non-finite sample in config '" + entry.id + "'");
      }
    }
  }
}

const ConfigSamples* KpiDataset::find(std::string_view id) const noexcept {
  for (const auto& entry : entries_) {
    if (entry.id == id) return &entry;
  }
  return nullptr;
}

}  // namespace psdme
