#include <doctest.h>

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "psdme/calibrator.hpp"
#include "psdme/json_export.hpp"
#include "psdme/width_comparison.hpp"
#include "support/run_cli.hpp"

using namespace psdme;
using testsupport::run_cli;
using testsupport::spit;
using testsupport::temp_file;

namespace {

std::filesystem::path small_dataset_csv() {
  const auto path = temp_file("dataset.csv");
  std::string csv = "config_id,value\n";
  // 12 configs, 8 samples each; config index shifts the values.
  for (int c = 0; c < 12; ++c) {
    for (int i = 0; i < 8; ++i) {
      csv += "c" + std::to_string(c) + "," +
             std::to_string(0.1 * c + 0.01 * ((i * 7) % 11)) + "\n";
    }
  }
  spit(path, csv);
  return path;
}

}  // namespace

TEST_CASE("bands command emits one record per selected config") {
  const auto dataset = small_dataset_csv();
  const auto res = run_cli("bands --input " + dataset.string() +
                           " --method ps --delta 0.1 --select top-m:10 --tau auto");
  REQUIRE(res.exit_code == 0);
  CHECK(res.err.empty());
  const auto doc = nlohmann::json::parse(res.out);
  REQUIRE(doc.is_array());
  CHECK(doc.size() == 10);
  for (const auto& rec : doc) {
    CHECK(rec["method"] == "ps-dme");
    CHECK(rec["n"] == 8);
    CHECK(rec["epsilon"].is_number());
    CHECK(rec["lower"].size() == 9);
  }
  std::filesystem::remove(dataset);
}

TEST_CASE("bands command validates method-specific flags") {
  const auto dataset = small_dataset_csv();
  const auto res = run_cli("bands --input " + dataset.string() +
                           " --method ss --delta 0.1 --select top-m:4");
  CHECK(res.exit_code == 2);
  CHECK(res.out.empty());
  CHECK(!res.err.empty());
  CHECK(res.err.find('\n') == res.err.size() - 1);  // single-line diagnostic
  std::filesystem::remove(dataset);
}

TEST_CASE("missing input file exits with the io code") {
  const auto res = run_cli("bands --input /nonexistent/x.csv --method ps --delta 0.1 "
                           "--select top-m:2");
  CHECK(res.exit_code == 1);
  const auto gk = run_cli("guaranteed-kpi --input /nonexistent/bands.json --gamma 0.1");
  CHECK(gk.exit_code == 1);
}

TEST_CASE("bands output is byte-identical across repeated seeded runs") {
  const auto dataset = small_dataset_csv();
  const std::string cmd = "bands --input " + dataset.string() +
                          " --method ss --split-ratio 0.5 --delta 0.1 "
                          "--select top-m:5 --seed 7";
  const auto first = run_cli(cmd);
  const auto second = run_cli(cmd);
  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);
  std::filesystem::remove(dataset);
}

TEST_CASE("compare-widths matches the library serialization byte for byte") {
  const auto res = run_cli(
      "compare-widths --n 100 --n-eval 50 --k 2000 --selected 1000 --delta 0.1 "
      "--tau auto");
  REQUIRE(res.exit_code == 0);
  const PowerCalibrator calib(optimal_tau(0.1, 2000, 1000));
  const WidthComparison cmp = width_comparison(100, 50, 2000, 1000, 0.1, calib);
  CHECK(res.out == width_comparison_json(cmp).dump(2) + "\n");
}

TEST_CASE("compare-widths sweep emits the full csv table") {
  const auto res = run_cli(
      "compare-widths --n 100 --k 2000 --selected 1000 --delta 0.1 --tau 0.5 "
      "--sweep 0:1:0.01");
  REQUIRE(res.exit_code == 0);
  std::size_t lines = 0;
  for (char ch : res.out) lines += ch == '\n' ? 1 : 0;
  CHECK(lines == 102);  // header + 101 rows
  CHECK(res.out.rfind("ratio,ss_width,ps_width\n", 0) == 0);
  CHECK(res.out.find("inf") != std::string::npos);  // ratio 0 row
}

TEST_CASE("simulate is deterministic and worker invariant") {
  const std::string base =
      "simulate --scenario gaussian-grid --method ps --trials 40 --k 20 --n 12 "
      "--delta 0.1 --select top-m:5 --seed 1";
  const auto one = run_cli(base + " --workers 1");
  const auto eight = run_cli(base + " --workers 8");
  const auto again = run_cli(base + " --workers 1");
  REQUIRE(one.exit_code == 0);
  CHECK(one.out == eight.out);
  CHECK(one.out == again.out);

  const auto doc = nlohmann::json::parse(one.out);
  CHECK(doc["trials"] == 40);
  CHECK(doc["method"] == "ps-dme");
  CHECK(doc["scenario"]["name"] == "gaussian-grid");
  CHECK(doc["fcp"].size() == 40);
  CHECK(doc["fcr"].is_number());
}

TEST_CASE("simulate covers the ridge scenario") {
  const auto res = run_cli(
      "simulate --scenario linear-gaussian --method ps --trials 3 --k 10 "
      "--n-cal 20 --holdout 50 --delta 0.1 --select top-m:5 --seed 3");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["scenario"]["name"] == "linear-gaussian");
  CHECK(doc["scenario"]["n"] == 20);
  CHECK(doc["fcp"].size() == 3);
}

TEST_CASE("guaranteed-kpi consumes a bands file") {
  const auto dataset = small_dataset_csv();
  const auto bands_path = temp_file("bands.json");
  const auto bands = run_cli("bands --input " + dataset.string() +
                             " --method naive --delta 0.1 --select top-m:6 --output " +
                             bands_path.string());
  REQUIRE(bands.exit_code == 0);

  const auto res = run_cli("guaranteed-kpi --input " + bands_path.string() +
                           " --gamma 0.8,0.6");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 2);
  CHECK(doc[0]["gamma"] == 0.8);
  CHECK(doc[0]["per_config"].size() == 6);

  // Descending gamma list produces nondecreasing overall levels.
  const auto x0 = doc[0]["overall"]["x_star"];
  const auto x1 = doc[1]["overall"]["x_star"];
  if (x0.is_number() && x1.is_number()) {
    CHECK(x0.get<double>() <= x1.get<double>());
  }

  std::filesystem::remove(dataset);
  std::filesystem::remove(bands_path);
}

TEST_CASE("synth emits loadable deterministic datasets") {
  const auto a = run_cli("synth --scenario gaussian-grid --k 3 --n 5 --seed 11");
  const auto b = run_cli("synth --scenario gaussian-grid --k 3 --n 5 --seed 11");
  const auto c = run_cli("synth --scenario gaussian-grid --k 3 --n 5 --seed 12");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(a.out.rfind("config_id,value\n", 0) == 0);

  const auto json_out = run_cli("synth --scenario gaussian-grid --k 3 --n 5 --format json");
  REQUIRE(json_out.exit_code == 0);
  const auto doc = nlohmann::json::parse(json_out.out);
  CHECK(doc["configs"].size() == 3);
}

TEST_CASE("berk-jones bands flow through the bands command") {
  const auto dataset = small_dataset_csv();
  const auto res = run_cli("bands --input " + dataset.string() +
                           " --method bj --delta 0.1 --select top-m:3");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  REQUIRE(doc.size() == 3);
  CHECK(doc[0]["method"] == "berk-jones");
  CHECK(doc[0]["epsilon"].is_null());
  CHECK(doc[0]["lower"][0] == 0.0);
  CHECK(doc[0]["upper"][8] == 1.0);
  // Default per-band level is delta * |S| / K.
  CHECK(doc[0]["meta"]["alpha"].get<double>() == doctest::Approx(0.1 * 3.0 / 12.0));

  // Pointwise records round-trip through guaranteed-kpi.
  const auto bands_path = temp_file("bj-bands.json");
  spit(bands_path, res.out);
  const auto gk = run_cli("guaranteed-kpi --input " + bands_path.string() + " --gamma 0.5");
  CHECK(gk.exit_code == 0);
  std::filesystem::remove(bands_path);
  std::filesystem::remove(dataset);
}

TEST_CASE("json datasets flow through the bands command") {
  const auto json_path = temp_file("dataset.json");
  const auto synth = run_cli("synth --scenario gaussian-grid --k 4 --n 6 --seed 2 "
                             "--format json --output " + json_path.string());
  REQUIRE(synth.exit_code == 0);
  const auto res = run_cli("bands --input " + json_path.string() +
                           " --format json --method naive --delta 0.1 --select top-m:2");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  CHECK(doc.size() == 2);
  CHECK(doc[0]["n"] == 6);
  std::filesystem::remove(json_path);
}

TEST_CASE("unknown flags and missing subcommand are validation errors") {
  CHECK(run_cli("bands --nope 1").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("compare-widths --n 100 --k 10 --selected 20 --delta 0.1 --n-eval 50")
            .exit_code == 2);  // selected > k
}
