#include "psdme/split.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psdme/rng.hpp"

namespace psdme {

SplitDataset split_dataset(const KpiDataset& data, double sel_fraction, std::uint64_t seed) {
  if (!(sel_fraction > 0.0) || !(sel_fraction < 1.0)) {
    throw std::invalid_argument("sel_fraction must lie in (0, 1)");
  }

  SplitDataset out;
  out.seed = seed;
  std::vector<ConfigSamples> sel_entries;
  std::vector<ConfigSamples> eval_entries;
  sel_entries.reserve(data.num_configs());
  eval_entries.reserve(data.num_configs());

  Rng rng(derive_stream(seed, 0x73706c6974ULL));  // one stream for the whole split
  for (const auto& entry : data.entries()) {
    const std::size_t n = entry.samples.size();
    if (n < 2) {
      throw std::invalid_argument("config '" + entry.id + "' cannot be split (single sample)");
    }
    const auto n_sel = static_cast<std::size_t>(
        std::floor(sel_fraction * static_cast<double>(n)));
    if (n_sel < 1 || n_sel > n - 1) {
      throw std::invalid_argument("sel_fraction leaves config '" + entry.id +
                                  "' with an empty part");
    }

    // Partial Fisher-Yates: the first n_sel slots become the selection.
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < n_sel; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(
          rng.uniform01() * static_cast<double>(n - i));
      std::swap(idx[i], idx[std::min(j, n - 1)]);
    }
    std::vector<std::size_t> sel_idx(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_sel));
    std::vector<std::size_t> eval_idx(idx.begin() + static_cast<std::ptrdiff_t>(n_sel), idx.end());
    std::sort(sel_idx.begin(), sel_idx.end());
    std::sort(eval_idx.begin(), eval_idx.end());

    ConfigSamples sel{entry.id, {}};
    ConfigSamples eval{entry.id, {}};
    sel.samples.reserve(n_sel);
    eval.samples.reserve(n - n_sel);
    for (std::size_t i : sel_idx) sel.samples.push_back(entry.samples[i]);
    for (std::size_t i : eval_idx) eval.samples.push_back(entry.samples[i]);

    sel_entries.push_back(std::move(sel));
    eval_entries.push_back(std::move(eval));
    out.selection_indices.push_back(std::move(sel_idx));
    out.evaluation_indices.push_back(std::move(eval_idx));
  }

  out.selection_part = KpiDataset(std::move(sel_entries));
  out.evaluation_part = KpiDataset(std::move(eval_entries));
  return out;
}

}  // namespace psdme
