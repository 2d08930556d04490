#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "psdme/bands.hpp"
#include "psdme/dataset.hpp"
#include "psdme/guaranteed_kpi.hpp"
#include "psdme/selection.hpp"
#include "psdme/true_cdf.hpp"

namespace psdme {

/// Calibrator policy for full-reuse bands: either a fixed tau or the
/// optimal choice computed from the realized selection size.
struct TauChoice {
  bool automatic = true;
  double value = 0.5;  // used when !automatic

  static TauChoice auto_optimal() { return {true, 0.0}; }
  static TauChoice fixed(double tau) { return {false, tau}; }
};

struct PipelineOptions {
  BandMethod method = BandMethod::PsDme;
  SelectionRule selection;
  double delta = 0.1;
  std::vector<double> gamma_list;            // may be empty
  TauChoice tau = TauChoice::auto_optimal(); // PsDme only
  std::optional<double> alpha;               // BerkJones; default delta*|S|/K
  std::optional<double> split_fraction;      // required for SsDme
  std::uint64_t seed = 0;                    // drives the SsDme split
};

/// One end-to-end evaluation run: split (sample-splitting only), select,
/// build one band per selected configuration with the realized selection
/// size, and derive guaranteed KPI levels for every requested gamma.
struct PipelineResult {
  SelectionOutcome selection;
  std::vector<NamedBand> bands;          // aligned with selection.selected_ids
  std::vector<GuaranteedKpi> guaranteed; // one per gamma, in input order
  /// Present when truth was supplied: per-selected-config miscoverage and
  /// the resulting false coverage proportion.
  std::optional<std::vector<bool>> miscoverage;
  std::optional<double> fcp;
  std::optional<double> tau_used;  // PsDme only
};

/// truth, when non-null, must hold one CDF per dataset configuration in
/// dataset order.
PipelineResult evaluate_pipeline(const KpiDataset& data,
                                 const std::vector<TrueCdf>* truth,
                                 const PipelineOptions& options);

}  // namespace psdme
