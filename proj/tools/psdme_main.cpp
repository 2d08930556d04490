#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psdme/json_export.hpp"
#include "psdme/psdme.hpp"

namespace {

using namespace psdme;

double parse_double_strict(const std::string& text, const char* what) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + text + "'");
  }
  return value;
}

TauChoice parse_tau(const std::string& text) {
  if (text == "auto") return TauChoice::auto_optimal();
  return TauChoice::fixed(parse_double_strict(text, "--tau"));
}

SelectionRule parse_selection(const std::string& text) {
  constexpr std::string_view prefix = "top-m:";
  if (text.rfind(prefix, 0) != 0) {
    throw std::invalid_argument("unsupported --select rule '" + text +
                                "' (expected top-m:INT)");
  }
  const std::string count = text.substr(prefix.size());
  std::size_t m = 0;
  const auto res = std::from_chars(count.data(), count.data() + count.size(), m);
  if (res.ec != std::errc() || res.ptr != count.data() + count.size() || m < 1) {
    throw std::invalid_argument("bad --select count '" + count + "'");
  }
  return SelectionRule::top_m(m);
}

std::vector<double> parse_float_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    values.push_back(parse_double_strict(item, what));
  }
  if (values.empty()) {
    throw std::invalid_argument(std::string("empty list for ") + what);
  }
  return values;
}

struct SweepSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

SweepSpec parse_sweep(const std::string& text) {
  std::stringstream ss(text);
  std::string part;
  std::vector<double> parts;
  while (std::getline(ss, part, ':')) {
    parts.push_back(parse_double_strict(part, "--sweep"));
  }
  if (parts.size() != 3) {
    throw std::invalid_argument("--sweep expects START:STOP:STEP");
  }
  return {parts[0], parts[1], parts[2]};
}

DatasetFormat parse_format(const std::string& text) {
  if (text == "csv") return DatasetFormat::Csv;
  if (text == "json") return DatasetFormat::Json;
  throw std::invalid_argument("bad --format '" + text + "' (expected csv|json)");
}

void write_output(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + output_path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + output_path + "'");
}

std::string dump_json(const ordered_json& doc) { return doc.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return buf.str();
}

struct CommonArgs {
  std::string input;
  std::string format = "csv";
  std::string method;
  std::string tau = "auto";
  std::string select;
  std::string output;
  std::string gamma;
  double delta = 0.1;
  std::optional<double> alpha;
  std::optional<double> split_ratio;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  // scenario knobs
  std::string scenario = "gaussian-grid";
  std::size_t k = 50;
  std::size_t n = 40;
  std::size_t n_cal = 20;
  std::size_t holdout = 100000;
  std::size_t trials = 200;
  // compare-widths knobs
  std::size_t cmp_n = 0;
  std::size_t cmp_n_eval = 0;
  std::size_t cmp_k = 0;
  std::size_t cmp_selected = 0;
  std::string sweep;
};

PipelineOptions pipeline_options(const CommonArgs& args, std::size_t default_top_m) {
  PipelineOptions opt;
  opt.method = band_method_from_name(args.method);
  opt.selection = args.select.empty()
                      ? SelectionRule::top_m(std::max<std::size_t>(1, default_top_m))
                      : parse_selection(args.select);
  opt.delta = args.delta;
  opt.tau = parse_tau(args.tau);
  opt.alpha = args.alpha;
  opt.split_fraction = args.split_ratio;
  opt.seed = args.seed;
  return opt;
}

Scenario make_scenario(const CommonArgs& args) {
  if (args.scenario == "gaussian-grid") {
    return gaussian_grid_scenario(args.k, args.n);
  }
  if (args.scenario == "linear-gaussian") {
    SynthLinearGaussianConfig cfg;
    cfg.lambda_grid = log_spaced_grid(1e-4, 1e2, args.k);
    cfg.n_cal = args.n_cal;
    cfg.holdout_size = args.holdout;
    return linear_gaussian_scenario(std::move(cfg));
  }
  throw std::invalid_argument("bad --scenario '" + args.scenario +
                              "' (expected gaussian-grid|linear-gaussian)");
}

int run_bands(const CommonArgs& args) {
  const KpiDataset data = load_dataset(args.input, parse_format(args.format));
  const PipelineOptions opt = pipeline_options(args, 0);
  const PipelineResult result = evaluate_pipeline(data, nullptr, opt);
  write_output(dump_json(band_records_json(result.bands)), args.output);
  return 0;
}

int run_simulate(const CommonArgs& args) {
  const Scenario scenario = make_scenario(args);
  const PipelineOptions opt = pipeline_options(args, args.k / 5);
  const FcrReport report = simulate_fcr(scenario, opt, args.trials, args.workers);
  write_output(dump_json(fcr_report_json(report)), args.output);
  return 0;
}

int run_compare_widths(const CommonArgs& args) {
  const PowerCalibrator calibrator(
      args.tau == "auto" ? optimal_tau(args.delta, args.cmp_k, args.cmp_selected)
                         : parse_double_strict(args.tau, "--tau"));
  if (!args.sweep.empty()) {
    const SweepSpec spec = parse_sweep(args.sweep);
    const auto rows = width_sweep(spec.start, spec.stop, spec.step, args.cmp_n,
                                  args.cmp_k, args.cmp_selected, args.delta, calibrator);
    write_output(width_sweep_csv(rows), args.output);
    return 0;
  }
  if (args.cmp_n_eval == 0) {
    throw std::invalid_argument("compare-widths needs --n-eval (or --sweep)");
  }
  const WidthComparison cmp = width_comparison(args.cmp_n, args.cmp_n_eval, args.cmp_k,
                                               args.cmp_selected, args.delta, calibrator);
  write_output(dump_json(width_comparison_json(cmp)), args.output);
  return 0;
}

int run_guaranteed_kpi(const CommonArgs& args) {
  const std::string text = read_file(args.input);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad bands JSON: ") + e.what());
  }
  const std::vector<NamedBand> bands = parse_band_records(doc);
  if (bands.empty()) throw ParseError("bands file holds no records");

  ordered_json records = ordered_json::array();
  for (double gamma : parse_float_list(args.gamma, "--gamma")) {
    records.push_back(guaranteed_kpi_json(best_over_selection(bands, gamma)));
  }
  write_output(dump_json(records), args.output);
  return 0;
}

int run_synth(const CommonArgs& args) {
  const Scenario scenario = make_scenario(args);
  const KpiDataset data = scenario.generate(args.seed).first;
  const auto format = parse_format(args.format);
  write_output(
      format == DatasetFormat::Csv ? dataset_to_csv(data) : dataset_to_json(data) + "\n",
      args.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Uniform CDF confidence bands for per-configuration KPIs with "
      "false-coverage-rate control after data-dependent pre-selection"};
  app.require_subcommand(1);

  CommonArgs args;

  CLI::App* bands = app.add_subcommand(
      "bands", "Build one confidence band per selected configuration");
  bands->add_option("--input", args.input, "Dataset path")->required();
  bands->add_option("--format", args.format, "Input format: csv|json");
  bands->add_option("--method", args.method, "ss|naive|ps|bj")->required();
  bands->add_option("--delta", args.delta, "FCR target in (0,1)")->required();
  bands->add_option("--tau", args.tau, "Calibrator parameter: auto or a value in (0,1)");
  bands->add_option("--alpha", args.alpha, "Berk-Jones level (default delta*|S|/K)");
  bands->add_option("--split-ratio", args.split_ratio, "Selection fraction (ss only)");
  bands->add_option("--select", args.select, "Selection rule, e.g. top-m:10")->required();
  bands->add_option("--seed", args.seed, "RNG seed (default 0)");
  bands->add_option("--output", args.output, "Write to file instead of stdout");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo FCR estimate on a synthetic scenario");
  simulate->add_option("--scenario", args.scenario, "gaussian-grid|linear-gaussian");
  simulate->add_option("--method", args.method, "ss|naive|ps|bj")->required();
  simulate->add_option("--delta", args.delta, "FCR target in (0,1)")->required();
  simulate->add_option("--trials", args.trials, "Trial count")->required();
  simulate->add_option("--k", args.k, "Configuration count (default 50)");
  simulate->add_option("--n", args.n, "Samples per configuration (gaussian-grid)");
  simulate->add_option("--n-cal", args.n_cal, "Calibration size (linear-gaussian)");
  simulate->add_option("--holdout", args.holdout, "Holdout size for the CDF proxy");
  simulate->add_option("--select", args.select, "Selection rule (default top-m:k/5)");
  simulate->add_option("--tau", args.tau, "Calibrator parameter: auto or a value");
  simulate->add_option("--alpha", args.alpha, "Berk-Jones level");
  simulate->add_option("--split-ratio", args.split_ratio, "Selection fraction (ss only)");
  simulate->add_option("--seed", args.seed, "RNG seed (default 0)");
  simulate->add_option("--workers", args.workers, "Worker threads (result-invariant)");
  simulate->add_option("--output", args.output, "Write to file instead of stdout");

  CLI::App* compare = app.add_subcommand(
      "compare-widths", "Splitting vs full-reuse band width analytics");
  compare->add_option("--n", args.cmp_n, "Full sample size")->required();
  compare->add_option("--n-eval", args.cmp_n_eval, "Evaluation-split size");
  compare->add_option("--k", args.cmp_k, "Configuration count")->required();
  compare->add_option("--selected", args.cmp_selected, "Selection size")->required();
  compare->add_option("--delta", args.delta, "FCR target in (0,1)")->required();
  compare->add_option("--tau", args.tau, "Calibrator parameter: auto or a value");
  compare->add_option("--sweep", args.sweep, "Ratio sweep START:STOP:STEP (CSV output)");
  compare->add_option("--output", args.output, "Write to file instead of stdout");

  CLI::App* guaranteed = app.add_subcommand(
      "guaranteed-kpi", "Best guaranteed KPI levels from a bands JSON file");
  guaranteed->add_option("--input", args.input, "Bands JSON path")->required();
  guaranteed->add_option("--gamma", args.gamma, "Comma-separated failure probabilities")
      ->required();
  guaranteed->add_option("--output", args.output, "Write to file instead of stdout");

  CLI::App* synth = app.add_subcommand(
      "synth", "Emit a synthetic dataset (CSV or JSON)");
  synth->add_option("--scenario", args.scenario, "gaussian-grid|linear-gaussian");
  synth->add_option("--k", args.k, "Configuration count");
  synth->add_option("--n", args.n, "Samples per configuration (gaussian-grid)");
  synth->add_option("--n-cal", args.n_cal, "Calibration size (linear-gaussian)");
  synth->add_option("--holdout", args.holdout, "Holdout size (linear-gaussian)");
  synth->add_option("--seed", args.seed, "RNG seed (default 0)");
  synth->add_option("--format", args.format, "Output format: csv|json");
  synth->add_option("--output", args.output, "Write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(bands)) return run_bands(args);
    if (app.got_subcommand(simulate)) return run_simulate(args);
    if (app.got_subcommand(compare)) return run_compare_widths(args);
    if (app.got_subcommand(guaranteed)) return run_guaranteed_kpi(args);
    if (app.got_subcommand(synth)) return run_synth(args);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
