#pragma once

#include <cstdint>
#include <vector>

#include "psdme/dataset.hpp"

namespace psdme {

/// Disjoint per-configuration partition of a dataset into a selection part
/// and an evaluation part. Index lists are sorted, 0-based, and for each
/// configuration their union is {0, ..., n_k - 1}.
struct SplitDataset {
  KpiDataset selection_part;
  KpiDataset evaluation_part;
  std::vector<std::vector<std::size_t>> selection_indices;
  std::vector<std::vector<std::size_t>> evaluation_indices;
  std::uint64_t seed = 0;
};

/// Uniform random per-configuration partition without replacement.
/// The selection part receives floor(sel_fraction * n_k) samples; the
/// evaluation part keeps the rest. Deterministic given the seed.
///
/// Throws std::invalid_argument when sel_fraction is outside (0, 1), when
/// any configuration has a single sample, or when the floor rule would
/// leave either part empty.
SplitDataset split_dataset(const KpiDataset& data, double sel_fraction, std::uint64_t seed);

}  // namespace psdme
