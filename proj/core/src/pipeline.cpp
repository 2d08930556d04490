#include "psdme/pipeline.hpp"

#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "psdme/berk_jones.hpp"
#include "psdme/fcr.hpp"
#include "psdme/split.hpp"

namespace psdme {

PipelineResult evaluate_pipeline(const KpiDataset& data,
                                 const std::vector<TrueCdf>* truth,
                                 const PipelineOptions& options) {
  if (!options.selection.apply) {
    throw std::invalid_argument("pipeline needs a selection rule");
  }
  if (data.num_configs() == 0) {
    throw std::invalid_argument("dataset has no configurations");
  }
  if (truth && truth->size() != data.num_configs()) {
    throw std::invalid_argument("truth list must match the dataset configuration count");
  }
  if (options.method == BandMethod::SsDme && !options.split_fraction) {
    throw std::invalid_argument("ss-dme needs a split fraction");
  }

  const std::size_t num_configs = data.num_configs();

  std::optional<SplitDataset> split;
  const KpiDataset* select_on = &data;
  const KpiDataset* eval_on = &data;
  if (options.method == BandMethod::SsDme) {
    split = split_dataset(data, *options.split_fraction, options.seed);
    select_on = &split->selection_part;
    eval_on = &split->evaluation_part;
  }

  PipelineResult result;
  result.selection = options.selection.apply(*select_on);
  const std::size_t selected = result.selection.size;
  if (selected != result.selection.selected_ids.size()) {
    throw std::invalid_argument("selection size disagrees with the id list");
  }

  if (selected == 0) {
    // Nothing to evaluate; the FCP of an empty selection is 0.
    for (double gamma : options.gamma_list) {
      result.guaranteed.push_back(GuaranteedKpi{gamma, {}, std::nullopt, std::nullopt});
    }
    if (truth) {
      result.miscoverage.emplace();
      result.fcp = 0.0;
    }
    return result;
  }

  std::optional<PowerCalibrator> calibrator;
  bool tau_heuristic = false;
  if (options.method == BandMethod::PsDme) {
    double tau = options.tau.value;
    if (options.tau.automatic) {
      tau = optimal_tau(options.delta, num_configs, selected);
      tau_heuristic = !options.selection.fixed_size;
    }
    calibrator.emplace(tau);
    result.tau_used = tau;
  }

  const double bj_alpha =
      options.alpha ? *options.alpha
                    : options.delta * static_cast<double>(selected) /
                          static_cast<double>(num_configs);
  std::map<std::size_t, BjCriticalValue> bj_cache;  // keyed by sample count

  BandParams params;
  params.num_configs = num_configs;
  params.selected_size = selected;
  params.delta = options.delta;
  params.calibrator = calibrator;
  params.tau_heuristic = tau_heuristic;

  result.bands.reserve(selected);
  for (const auto& id : result.selection.selected_ids) {
    const ConfigSamples* entry = eval_on->find(id);
    if (!entry) {
      throw std::invalid_argument("selected id '" + id + "' is not in the dataset");
    }
    EmpiricalCdf ecdf(entry->samples);
    if (options.method == BandMethod::BerkJones) {
      auto it = bj_cache.find(ecdf.size());
      if (it == bj_cache.end()) {
        it = bj_cache.emplace(ecdf.size(), bj_null_quantile(ecdf.size(), bj_alpha)).first;
      }
      BandMeta meta;
      meta.num_configs = num_configs;
      meta.selected_size = selected;
      meta.delta = options.delta;
      result.bands.push_back({id, bj_band(std::move(ecdf), it->second, std::move(meta))});
    } else {
      result.bands.push_back({id, build_band(std::move(ecdf), options.method, params)});
    }
  }

  for (double gamma : options.gamma_list) {
    result.guaranteed.push_back(best_over_selection(result.bands, gamma));
  }

  if (truth) {
    std::unordered_map<std::string_view, std::size_t> index;
    index.reserve(num_configs);
    for (std::size_t i = 0; i < num_configs; ++i) {
      index.emplace(data.config(i).id, i);
    }
    std::vector<bool> flags;
    flags.reserve(selected);
    for (const auto& item : result.bands) {
      flags.push_back(miscovered(item.band, (*truth)[index.at(item.config_id)]));
    }
    result.fcp = fcp(flags);
    result.miscoverage = std::move(flags);
  }
  return result;
}

}  // namespace psdme
