#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "psdme/dataset.hpp"
#include "psdme/dataset_io.hpp"
#include "psdme/empirical_cdf.hpp"
#include "psdme/rng.hpp"
#include "psdme/split.hpp"
#include "psdme/synth.hpp"
#include "psdme/true_cdf.hpp"

using namespace psdme;

TEST_CASE("dataset invariants") {
  using Entries = std::vector<ConfigSamples>;
  CHECK_THROWS_AS(KpiDataset(Entries{{"a", {1.0}}, {"a", {2.0}}}), std::invalid_argument);
  CHECK_THROWS_AS(KpiDataset(Entries{{"a", {}}}), std::invalid_argument);
  CHECK_THROWS_AS(KpiDataset(Entries{{"a", {std::nan("")}}}), std::invalid_argument);
  CHECK_THROWS_AS(KpiDataset(Entries{{"a", {1.0, INFINITY}}}), std::invalid_argument);

  const KpiDataset data(Entries{{"a", {1.0, 2.0}}, {"b", {3.0}}});
  CHECK(data.num_configs() == 2);
  CHECK(data.find("b")->samples == std::vector<double>{3.0});
  CHECK(data.find("c") == nullptr);
}

TEST_CASE("csv ingestion groups rows by config id") {
  const auto data = parse_dataset_csv("config_id,value\na,1.0\na,2.0\nb,3.0\n");
  REQUIRE(data.num_configs() == 2);
  CHECK(data.config(0).id == "a");
  CHECK(data.config(0).samples == std::vector<double>{1.0, 2.0});
  CHECK(data.config(1).samples == std::vector<double>{3.0});
}

TEST_CASE("csv ingestion errors") {
  CHECK_THROWS_AS(parse_dataset_csv(""), ParseError);
  CHECK_THROWS_AS(parse_dataset_csv("config,value\na,1\n"), ParseError);
  CHECK_THROWS_AS(parse_dataset_csv("config_id,value\n"), ParseError);
  CHECK_THROWS_AS(parse_dataset_csv("config_id,value\na,NaN\n"), ParseError);
  CHECK_THROWS_AS(parse_dataset_csv("config_id,value\na,inf\n"), ParseError);
  CHECK_THROWS_AS(parse_dataset_csv("config_id,value\na,1x\n"), ParseError);
  CHECK_THROWS_AS(parse_dataset_csv("config_id,value\nnocomma\n"), ParseError);
  CHECK_THROWS_AS(parse_dataset_csv("config_id,value\n,1.0\n"), ParseError);
}

TEST_CASE("dataset round trips are exact") {
  Rng rng(20240501);
  for (int rep = 0; rep < 25; ++rep) {
    std::vector<ConfigSamples> entries;
    const int configs = 1 + static_cast<int>(rng.uniform01() * 6);
    for (int c = 0; c < configs; ++c) {
      ConfigSamples entry{"cfg" + std::to_string(c), {}};
      const int n = 1 + static_cast<int>(rng.uniform01() * 20);
      for (int i = 0; i < n; ++i) {
        const double magnitude = std::exp(40.0 * (rng.uniform01() - 0.5));
        entry.samples.push_back((rng.uniform01() - 0.5) * magnitude);
      }
      entries.push_back(std::move(entry));
    }
    const KpiDataset data(std::move(entries));
    CHECK(parse_dataset_json(dataset_to_json(data)) == data);
    CHECK(parse_dataset_csv(dataset_to_csv(data)) == data);
  }
}

TEST_CASE("empirical cdf evaluation") {
  const EmpiricalCdf cdf({2.0, 1.0, 3.0});
  CHECK(cdf(2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(cdf(0.5) == 0.0);
  CHECK(cdf(3.0) == 1.0);
  CHECK(cdf(100.0) == 1.0);

  const EmpiricalCdf ties({1.0, 1.0, 2.0});
  CHECK(ties(1.0) == doctest::Approx(2.0 / 3.0));

  CHECK_THROWS_AS(EmpiricalCdf({}), std::invalid_argument);
  CHECK_THROWS_AS(EmpiricalCdf({1.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("empirical cdf is a nondecreasing step function hitting i/n") {
  Rng rng(7);
  std::vector<double> samples(40);
  for (double& v : samples) v = rng.gaussian();
  const EmpiricalCdf cdf(samples);

  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = -4.0 + 8.0 * i / 1000.0;
    const double v = cdf(x);
    CHECK(v >= prev);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
  const auto& sorted = cdf.sorted_values();
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    CHECK(cdf(sorted[i]) >= static_cast<double>(i + 1) / sorted.size());
  }
}

TEST_CASE("split dataset partition arithmetic") {
  std::vector<double> ten;
  for (int i = 0; i < 10; ++i) ten.push_back(i);
  const KpiDataset data({{"a", ten}});

  const SplitDataset split = split_dataset(data, 0.5, 3);
  CHECK(split.selection_part.config(0).samples.size() == 5);
  CHECK(split.evaluation_part.config(0).samples.size() == 5);

  // Disjoint index sets whose union is {0..9}.
  std::vector<std::size_t> all = split.selection_indices[0];
  all.insert(all.end(), split.evaluation_indices[0].begin(),
             split.evaluation_indices[0].end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < 10; ++i) CHECK(all[i] == i);

  const SplitDataset again = split_dataset(data, 0.5, 3);
  CHECK(again.selection_indices == split.selection_indices);

  const KpiDataset four({{"a", {1.0, 2.0, 3.0, 4.0}}});
  const SplitDataset floored = split_dataset(four, 0.3, 0);
  CHECK(floored.selection_part.config(0).samples.size() == 1);
  CHECK(floored.evaluation_part.config(0).samples.size() == 3);
}

TEST_CASE("split dataset preserves the per-config multiset") {
  Rng rng(11);
  std::vector<ConfigSamples> entries;
  for (int c = 0; c < 4; ++c) {
    ConfigSamples entry{"c" + std::to_string(c), {}};
    for (int i = 0; i < 17; ++i) entry.samples.push_back(rng.gaussian());
    entries.push_back(std::move(entry));
  }
  const KpiDataset data(std::move(entries));
  const SplitDataset split = split_dataset(data, 0.4, 99);
  for (std::size_t c = 0; c < data.num_configs(); ++c) {
    std::vector<double> merged = split.selection_part.config(c).samples;
    const auto& eval = split.evaluation_part.config(c).samples;
    merged.insert(merged.end(), eval.begin(), eval.end());
    std::sort(merged.begin(), merged.end());
    std::vector<double> original = data.config(c).samples;
    std::sort(original.begin(), original.end());
    CHECK(merged == original);
  }
}

TEST_CASE("split dataset errors") {
  const KpiDataset data({{"a", {1.0, 2.0}}});
  CHECK_THROWS_AS(split_dataset(data, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(split_dataset(data, 1.0, 0), std::invalid_argument);
  const KpiDataset single({{"a", {1.0}}});
  CHECK_THROWS_AS(split_dataset(single, 0.5, 0), std::invalid_argument);
  // floor(0.1 * 2) = 0 would leave the selection part empty.
  CHECK_THROWS_AS(split_dataset(data, 0.1, 0), std::invalid_argument);
}

TEST_CASE("gaussian grid generator") {
  const auto [data, truths] = synth_gaussian_grid(2, {0.0, 5.0}, {1.0, 2.0}, 5, 1);
  CHECK(data.num_configs() == 2);
  CHECK(data.config(0).samples.size() == 5);
  CHECK(truths.size() == 2);
  CHECK(truths[1].kind() == TrueCdf::Kind::Gaussian);
  CHECK(truths[1].mean() == 5.0);

  const auto [again, t2] = synth_gaussian_grid(2, {0.0, 5.0}, {1.0, 2.0}, 5, 1);
  CHECK(again == data);

  CHECK_THROWS_AS(synth_gaussian_grid(2, {0.0}, {1.0, 1.0}, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(synth_gaussian_grid(1, {0.0}, {0.0}, 5, 1), std::invalid_argument);
}

TEST_CASE("gaussian grid sample means obey the law of large numbers") {
  const std::size_t n = 100000;
  const auto [data, truths] = synth_gaussian_grid(2, {-1.5, 2.0}, {1.0, 1.0}, n, 77);
  for (std::size_t k = 0; k < 2; ++k) {
    double mean = 0.0;
    for (double v : data.config(k).samples) mean += v;
    mean /= static_cast<double>(n);
    CHECK(std::abs(mean - (k == 0 ? -1.5 : 2.0)) < 0.02);
  }
}

TEST_CASE("linear gaussian generator shape and positivity") {
  SynthLinearGaussianConfig cfg;
  cfg.lambda_grid = log_spaced_grid(1e-4, 1e2, 50);
  cfg.n_cal = 20;
  cfg.holdout_size = 50;
  cfg.seed = 5;
  const auto [data, truths] = synth_linear_gaussian(cfg);
  CHECK(data.num_configs() == 50);
  CHECK(truths.size() == 50);
  for (const auto& entry : data.entries()) {
    CHECK(entry.samples.size() == 20);
    for (double v : entry.samples) CHECK(v >= 0.0);
  }
  CHECK(truths[0].kind() == TrueCdf::Kind::Table);
  CHECK(truths[0].knots().size() == 50);

  const auto [same, t2] = synth_linear_gaussian(cfg);
  CHECK(same == data);

  SynthLinearGaussianConfig other = cfg;
  other.seed = 6;
  CHECK(synth_linear_gaussian(other).first != data);
}

TEST_CASE("huge regularization drives the predictor to zero") {
  // Ridge weights scale as 1/lambda once lambda dwarfs the gram matrix, so
  // two huge-lambda configs must agree on the zero-predictor KPI limit.
  SynthLinearGaussianConfig cfg;
  cfg.lambda_grid = {1e11, 1e13};
  cfg.n_cal = 200;
  cfg.holdout_size = 1;
  cfg.seed = 12;
  const auto [data, truths] = synth_linear_gaussian(cfg);
  const auto& a = data.config(0).samples;
  const auto& b = data.config(1).samples;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i] - b[i]) <= 1e-6 * std::max(1.0, b[i]));
  }
}

TEST_CASE("linear gaussian validation") {
  SynthLinearGaussianConfig cfg;
  cfg.lambda_grid = {1.0, 0.5};
  CHECK_THROWS_AS(synth_linear_gaussian(cfg), std::invalid_argument);
  cfg.lambda_grid = {-1.0, 0.5};
  CHECK_THROWS_AS(synth_linear_gaussian(cfg), std::invalid_argument);
  cfg.lambda_grid = {};
  CHECK_THROWS_AS(synth_linear_gaussian(cfg), std::invalid_argument);
}

TEST_CASE("true cdf evaluation") {
  const TrueCdf gauss = TrueCdf::gaussian(0.0, 1.0);
  CHECK(gauss(0.0) == doctest::Approx(0.5).epsilon(1e-12));

  const TrueCdf unif = TrueCdf::uniform01();
  CHECK(unif(0.3) == doctest::Approx(0.3));
  CHECK(unif(-1.0) == 0.0);
  CHECK(unif(2.0) == 1.0);

  const TrueCdf table = TrueCdf::table({1.0, 2.0}, {0.2, 0.8});
  CHECK(table(1.5) == doctest::Approx(0.5));
  CHECK(table(0.5) == 0.0);
  CHECK(table(2.5) == 1.0);
  CHECK(table(1.0) == doctest::Approx(0.2));
  CHECK(table.left_limit(1.0) == 0.0);
  CHECK(table.left_limit(1.5) == doctest::Approx(0.5));
  CHECK(table.left_limit(3.0) == 1.0);

  CHECK_THROWS_AS(TrueCdf::gaussian(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(TrueCdf::table({1.0, 0.5}, {0.1, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(TrueCdf::table({1.0, 2.0}, {0.5, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(TrueCdf::table({1.0, 2.0}, {0.5, 1.2}), std::invalid_argument);
}

TEST_CASE("true cdf is nondecreasing for every kind") {
  const TrueCdf kinds[] = {TrueCdf::gaussian(0.3, 2.0), TrueCdf::uniform01(),
                           TrueCdf::table({-1.0, 0.0, 0.5, 3.0}, {0.1, 0.4, 0.4, 0.9})};
  for (const TrueCdf& f : kinds) {
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = -5.0 + 10.0 * i / 1000.0;
      const double v = f(x);
      CHECK(v >= prev);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      prev = v;
    }
  }
}
