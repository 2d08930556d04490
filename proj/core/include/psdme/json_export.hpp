#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "psdme/bands.hpp"
#include "psdme/fcr.hpp"
#include "psdme/guaranteed_kpi.hpp"
#include "psdme/pipeline.hpp"
#include "psdme/width_comparison.hpp"

namespace psdme {

using ordered_json = nlohmann::ordered_json;

/// One band record:
/// {"config_id","method","n","epsilon","knots","lower","upper","meta"}.
/// epsilon is null for pointwise bands; lower/upper hold the plateau values
/// 0..n (index 0 is the band left of every knot, index n extends beyond the
/// last knot).
ordered_json band_record_json(const NamedBand& band);
ordered_json band_records_json(const std::vector<NamedBand>& bands);

/// Inverse of band_record_json; throws ParseError on malformed records.
std::vector<NamedBand> parse_band_records(const nlohmann::json& records);

ordered_json guaranteed_kpi_json(const GuaranteedKpi& g);
ordered_json fcr_report_json(const FcrReport& report);
ordered_json width_comparison_json(const WidthComparison& cmp);

/// CSV table "ratio,ss_width,ps_width" for the split-ratio sweep.
std::string width_sweep_csv(const std::vector<WidthSweepRow>& rows);

}  // namespace psdme
