#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace psdme {

/// KPI samples for one configuration. Values are negatively oriented
/// (lower is better) and kept in insertion order.
struct ConfigSamples {
  std::string id;
  std::vector<double> samples;

  bool operator==(const ConfigSamples&) const = default;
};

/// Per-configuration KPI samples.
///
/// Invariants, enforced at construction: configuration ids are unique,
/// every sample is finite, and every configuration holds at least one
/// sample. Instances are immutable after construction and safe to share
/// across threads.
class KpiDataset {
 public:
  KpiDataset() = default;
  explicit KpiDataset(std::vector<ConfigSamples> entries);

  const std::vector<ConfigSamples>& entries() const noexcept { return entries_; }
  std::size_t num_configs() const noexcept { return entries_.size(); }
  const ConfigSamples& config(std::size_t index) const { return entries_.at(index); }

  /// nullptr when no configuration carries this id.
  const ConfigSamples* find(std::string_view id) const noexcept;

  bool operator==(const KpiDataset&) const = default;

 private:
  std::vector<ConfigSamples> entries_;
};

}  // namespace psdme
