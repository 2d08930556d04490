#include "psdme/json_export.hpp"

#include <charconv>
#include <cmath>

#include "psdme/dataset_io.hpp"

namespace psdme {

namespace {

ordered_json optional_number(std::optional<double> v) {
  if (!v) return nullptr;
  return *v;
}

std::string csv_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

ordered_json band_record_json(const NamedBand& band) {
  const ConfidenceBand& b = band.band;
  const std::size_t n = b.ecdf().size();

  ordered_json meta;
  meta["num_configs"] = b.meta().num_configs;
  meta["selected_size"] = b.meta().selected_size;
  meta["delta"] = b.meta().delta;
  meta["tau"] = optional_number(b.meta().tau);
  meta["alpha"] = optional_number(b.meta().alpha);
  meta["tau_heuristic"] = b.meta().tau_heuristic;

  std::vector<double> lower(n + 1);
  std::vector<double> upper(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    lower[i] = b.plateau_lower(i);
    upper[i] = b.plateau_upper(i);
  }

  ordered_json rec;
  rec["config_id"] = band.config_id;
  rec["method"] = std::string(band_method_name(b.method()));
  rec["n"] = n;
  rec["epsilon"] = optional_number(b.radius());
  rec["knots"] = b.ecdf().sorted_values();
  rec["lower"] = lower;
  rec["upper"] = upper;
  rec["meta"] = std::move(meta);
  return rec;
}

ordered_json band_records_json(const std::vector<NamedBand>& bands) {
  ordered_json arr = ordered_json::array();
  for (const auto& band : bands) arr.push_back(band_record_json(band));
  return arr;
}

std::vector<NamedBand> parse_band_records(const nlohmann::json& records) {
  if (!records.is_array()) throw ParseError("band records must form an array");
  std::vector<NamedBand> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    try {
      const auto method = band_method_from_name(rec.at("method").get<std::string>());
      EmpiricalCdf ecdf(rec.at("knots").get<std::vector<double>>());

      BandMeta meta;
      if (rec.contains("meta")) {
        const auto& m = rec["meta"];
        meta.num_configs = m.value("num_configs", std::size_t{0});
        meta.selected_size = m.value("selected_size", std::size_t{0});
        meta.delta = m.value("delta", 0.0);
        if (m.contains("tau") && m["tau"].is_number()) meta.tau = m["tau"].get<double>();
        if (m.contains("alpha") && m["alpha"].is_number()) {
          meta.alpha = m["alpha"].get<double>();
        }
        meta.tau_heuristic = m.value("tau_heuristic", false);
      }

      const auto& eps = rec.at("epsilon");
      ConfidenceBand band =
          eps.is_null()
              ? ConfidenceBand::pointwise(std::move(ecdf),
                                          rec.at("lower").get<std::vector<double>>(),
                                          rec.at("upper").get<std::vector<double>>(),
                                          std::move(meta))
              : ConfidenceBand::uniform(std::move(ecdf), method, eps.get<double>(),
                                        std::move(meta));
      out.push_back({rec.at("config_id").get<std::string>(), std::move(band)});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad band record: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("bad band record: ") + e.what());
    }
  }
  return out;
}

ordered_json guaranteed_kpi_json(const GuaranteedKpi& g) {
  ordered_json per_config = ordered_json::array();
  for (const auto& entry : g.per_config) {
    per_config.push_back(
        {{"id", entry.config_id}, {"x_star", optional_number(entry.x_star)}});
  }
  ordered_json overall;
  overall["id"] = g.overall_id ? ordered_json(*g.overall_id) : ordered_json(nullptr);
  overall["x_star"] = optional_number(g.overall_x_star);

  ordered_json doc;
  doc["gamma"] = g.gamma;
  doc["per_config"] = std::move(per_config);
  doc["overall"] = std::move(overall);
  return doc;
}

ordered_json fcr_report_json(const FcrReport& report) {
  ordered_json scenario;
  scenario["name"] = report.scenario_name;
  for (const auto& [key, value] : report.scenario_params) scenario[key] = value;

  ordered_json metadata;
  metadata["avg_selected_size"] = report.avg_selected_size;
  metadata["avg_band_radius"] = std::isnan(report.avg_band_radius)
                                    ? ordered_json(nullptr)
                                    : ordered_json(report.avg_band_radius);
  metadata["radius_weighting"] = "unweighted-mean";

  ordered_json doc;
  doc["trials"] = report.trials;
  doc["fcr"] = report.fcr_estimate;
  doc["stderr"] = report.std_error;
  doc["fcp"] = report.fcp_values;
  doc["method"] = report.method;
  doc["scenario"] = std::move(scenario);
  doc["seed"] = report.seed;
  doc["metadata"] = std::move(metadata);
  return doc;
}

ordered_json width_comparison_json(const WidthComparison& cmp) {
  ordered_json doc;
  doc["ratio"] = cmp.ratio;
  doc["crossover_ratio"] = cmp.crossover_ratio;
  doc["envelope_crossover_ratio"] = cmp.envelope_crossover_ratio;
  doc["ps_width"] = cmp.ps_width;
  doc["ss_width"] = cmp.ss_width;
  doc["ps_narrower"] = cmp.ps_narrower;
  return doc;
}

std::string width_sweep_csv(const std::vector<WidthSweepRow>& rows) {
  std::string out = "ratio,ss_width,ps_width\n";
  for (const auto& row : rows) {
    out += csv_number(row.ratio);
    out.push_back(',');
    out += csv_number(row.ss_width);
    out.push_back(',');
    out += csv_number(row.ps_width);
    out.push_back('\n');
  }
  return out;
}

}  // namespace psdme
