#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <vector>

#include "psdme/bands.hpp"
#include "psdme/berk_jones.hpp"
#include "psdme/rng.hpp"

using namespace psdme;

namespace {

// Boxes for the event {BJ statistic <= q}: the k-th order statistic must
// stay within [left root at k/n, right root at (k-1)/n].
void bj_boxes_for_test(std::size_t n, double q, std::vector<double>& lower,
                       std::vector<double>& upper) {
  lower.resize(n);
  upper.resize(n);
  const double nd = static_cast<double>(n);
  for (std::size_t k = 1; k <= n; ++k) {
    lower[k - 1] = kl_invert(static_cast<double>(k) / nd, q).first;
    upper[k - 1] = kl_invert(static_cast<double>(k - 1) / nd, q).second;
  }
}

double brute_force_box_probability(const std::vector<double>& lower,
                                   const std::vector<double>& upper,
                                   std::size_t reps, std::uint64_t seed) {
  const std::size_t n = lower.size();
  std::vector<double> u(n);
  std::size_t hits = 0;
  Rng rng(seed);
  for (std::size_t rep = 0; rep < reps; ++rep) {
    for (double& v : u) v = rng.open01();
    std::sort(u.begin(), u.end());
    bool inside = true;
    for (std::size_t i = 0; i < n && inside; ++i) {
      inside = u[i] >= lower[i] && u[i] <= upper[i];
    }
    hits += inside ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(reps);
}

}  // namespace

TEST_CASE("bernoulli kl divergence") {
  CHECK(bernoulli_kl(0.5, 0.5) == 0.0);
  CHECK(bernoulli_kl(0.2, 0.5) == doctest::Approx(0.192744757021757).epsilon(1e-12));
  CHECK(bernoulli_kl(0.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(bernoulli_kl(1.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  for (int ai = 0; ai <= 10; ++ai) {
    const double a = ai / 10.0;
    for (int bi = 1; bi < 10; ++bi) {
      const double b = bi / 10.0;
      const double v = bernoulli_kl(a, b);
      CHECK(v >= 0.0);
      if (a == b) CHECK(v == 0.0);
      if (a != b) CHECK(v > 0.0);
    }
  }
  CHECK_THROWS_AS(bernoulli_kl(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(bernoulli_kl(0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(bernoulli_kl(-0.1, 0.5), std::domain_error);
}

TEST_CASE("kl inversion") {
  const auto [lo0, hi0] = kl_invert(0.0, std::log(2.0));
  CHECK(lo0 == 0.0);
  CHECK(hi0 == doctest::Approx(0.5).epsilon(1e-12));

  const auto [lo1, hi1] = kl_invert(1.0, std::log(2.0));
  CHECK(lo1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hi1 == 1.0);

  const auto [lo_big, hi_big] = kl_invert(0.4, 1e9);
  CHECK(lo_big <= 1e-12);
  CHECK(hi_big >= 1.0 - 1e-12);

  CHECK_THROWS_AS(kl_invert(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(kl_invert(1.5, 1.0), std::domain_error);
}

TEST_CASE("kl inversion round trip") {
  // Roots are accurate to 1e-12 in u, so the divergence residual can grow
  // with the local derivative when a root presses against 0 or 1.
  const auto allowance = [](double fhat, double u, double q) {
    const double deriv = std::abs((u - fhat) / (u * (1.0 - u)));
    return 1e-9 * std::max(1.0, q) + deriv * 1e-12;
  };
  for (double fhat : {0.02, 0.2, 0.5, 0.77, 0.98}) {
    for (double q : {0.01, 0.1, 0.5, 2.0}) {
      const auto [lo, hi] = kl_invert(fhat, q);
      CHECK(lo <= fhat);
      CHECK(hi >= fhat);
      if (lo > 0.0) {
        CHECK(std::abs(bernoulli_kl(fhat, lo) - q) <= allowance(fhat, lo, q));
      }
      if (hi < 1.0) {
        CHECK(std::abs(bernoulli_kl(fhat, hi) - q) <= allowance(fhat, hi, q));
      }
    }
  }
}

TEST_CASE("bj statistic") {
  CHECK(bj_statistic(EmpiricalCdf({0.5}), TrueCdf::uniform01()) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // n = 1 closed form max(-log u, -log(1 - u)).
  for (double u : {0.1, 0.37, 0.8}) {
    CHECK(bj_statistic(EmpiricalCdf({u}), TrueCdf::uniform01()) ==
          doctest::Approx(std::max(-std::log(u), -std::log1p(-u))).epsilon(1e-12));
  }

  // Degenerate candidates: mass 0 or 1 where the ECDF is interior.
  CHECK_THROWS_AS(bj_statistic(EmpiricalCdf({-0.5, 0.5}), TrueCdf::uniform01()),
                  std::domain_error);
  CHECK_THROWS_AS(bj_statistic(EmpiricalCdf({0.5, 1.5}), TrueCdf::uniform01()),
                  std::domain_error);
}

TEST_CASE("bj statistic shrinks as the candidate moves toward the ecdf") {
  Rng rng(5);
  std::vector<double> samples(20);
  for (double& v : samples) v = rng.open01();
  const EmpiricalCdf ecdf(samples);
  const auto& sorted = ecdf.sorted_values();
  const double n = static_cast<double>(sorted.size());

  // Tables mixing the step CDF with uniform01: weight 0 is the step CDF
  // itself, weight 1 interpolates the uniform at the same knots.
  const auto mixed = [&](double w) {
    std::vector<double> knots;
    std::vector<double> values;
    knots.push_back(0.0);
    values.push_back(0.0);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const double step_lo = static_cast<double>(ecdf.count_below(sorted[i])) / n;
      const double step_hi = static_cast<double>(ecdf.count_at_or_below(sorted[i])) / n;
      knots.push_back(sorted[i]);
      values.push_back((1.0 - w) * step_lo + w * sorted[i]);
      knots.push_back(sorted[i]);
      values.push_back((1.0 - w) * step_hi + w * sorted[i]);
    }
    knots.push_back(1.0);
    values.push_back(1.0);
    return TrueCdf::table(std::move(knots), std::move(values));
  };

  double prev = -1.0;
  for (double w : {0.1, 0.4, 0.7, 1.0}) {
    const double stat = bj_statistic(ecdf, mixed(w));
    CHECK(stat >= prev);
    prev = stat;
  }
  CHECK(bj_statistic(ecdf, mixed(1.0)) <=
        bj_statistic(ecdf, TrueCdf::uniform01()) + 1e-12);
}

TEST_CASE("noncrossing probability closed forms") {
  const std::vector<double> zeros{0.0};
  const std::vector<double> ones{1.0};
  CHECK(noncrossing_probability(zeros, ones) == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<double> a1{0.2};
  const std::vector<double> b1{0.9};
  CHECK(noncrossing_probability(a1, b1) == doctest::Approx(0.7).epsilon(1e-10));

  const std::vector<double> a2{0.0, 0.0};
  const std::vector<double> b2{0.5, 1.0};
  CHECK(noncrossing_probability(a2, b2) == doctest::Approx(0.75).epsilon(1e-10));

  // Disjoint per-index boxes: 2 * P(U1 in [.3,.5]) * P(U2 in [.6,.9]).
  const std::vector<double> a3{0.3, 0.6};
  const std::vector<double> b3{0.5, 0.9};
  CHECK(noncrossing_probability(a3, b3) == doctest::Approx(0.12).epsilon(1e-10));

  // Full box on many points.
  const std::vector<double> a4(40, 0.0);
  const std::vector<double> b4(40, 1.0);
  CHECK(noncrossing_probability(a4, b4) == doctest::Approx(1.0).epsilon(1e-10));

  const std::vector<double> bad_a{0.5, 0.2};
  CHECK_THROWS_AS(noncrossing_probability(bad_a, b3), std::invalid_argument);
  const std::vector<double> bad_b{0.2, 0.1};
  CHECK_THROWS_AS(noncrossing_probability(a3, bad_b), std::invalid_argument);
}

TEST_CASE("noncrossing probability matches brute force enumeration") {
  for (std::size_t n : {2, 3, 5}) {
    std::vector<double> lower;
    std::vector<double> upper;
    bj_boxes_for_test(n, 0.35, lower, upper);
    const double exact = noncrossing_probability(lower, upper);
    const double mc = brute_force_box_probability(lower, upper, 200000, 1234 + n);
    const double sigma = std::sqrt(exact * (1.0 - exact) / 200000.0);
    CHECK(std::abs(mc - exact) <= 3.0 * sigma + 1e-12);
  }
}

TEST_CASE("bj null quantile closed form at n = 1") {
  const BjCriticalValue crit = bj_null_quantile(1, 0.1);
  CHECK(crit.method == BjMethod::ExactRecursion);
  CHECK(crit.q == doctest::Approx(std::log(20.0)).epsilon(1e-7));

  // P(S_1 <= q) = 1 - 2 exp(-q) for q >= log 2.
  const BjCriticalValue other = bj_null_quantile(1, 0.37);
  CHECK(other.q == doctest::Approx(std::log(2.0 / 0.37)).epsilon(1e-7));
}

TEST_CASE("bj null quantile monotonicity") {
  CHECK(bj_null_quantile(20, 0.01).q > bj_null_quantile(20, 0.1).q);
  CHECK(bj_null_quantile(10, 0.1).q > bj_null_quantile(50, 0.1).q);
}

TEST_CASE("bj null quantile exact and monte carlo agree") {
  const std::size_t n = 20;
  const double alpha = 0.1;
  const BjCriticalValue mc = bj_null_quantile(n, alpha, BjMethod::MonteCarlo, 100000, 9);
  CHECK(mc.mc_reps == 100000);

  // The exact recursion evaluates the CDF of the null statistic at the MC
  // quantile; the result must sit within MC error of the target.
  std::vector<double> lower;
  std::vector<double> upper;
  bj_boxes_for_test(n, mc.q, lower, upper);
  const double coverage = noncrossing_probability(lower, upper);
  const double sigma = std::sqrt(alpha * (1.0 - alpha) / 100000.0);
  CHECK(std::abs(coverage - (1.0 - alpha)) <= 3.0 * sigma);
}

TEST_CASE("bj monte carlo quantile is worker invariant") {
  const BjCriticalValue one = bj_null_quantile(15, 0.2, BjMethod::MonteCarlo, 20000, 5, 1);
  const BjCriticalValue four = bj_null_quantile(15, 0.2, BjMethod::MonteCarlo, 20000, 5, 4);
  CHECK(one.q == four.q);
}

TEST_CASE("bj band bounds") {
  const BjCriticalValue crit = bj_null_quantile(1, 0.1);
  const ConfidenceBand band = bj_band(EmpiricalCdf({0.5}), crit);
  CHECK(band.method() == BandMethod::BerkJones);
  CHECK(band.plateau_lower(0) == 0.0);
  CHECK(band.plateau_upper(0) == doctest::Approx(0.95).epsilon(1e-7));
  CHECK(band.plateau_lower(1) == doctest::Approx(0.05).epsilon(1e-7));
  CHECK(band.plateau_upper(1) == 1.0);
  CHECK(band.meta().alpha == crit.alpha);

  // Bounds arrays are nondecreasing across plateaus.
  Rng rng(8);
  std::vector<double> samples(25);
  for (double& v : samples) v = rng.gaussian();
  const ConfidenceBand wide = bj_band(EmpiricalCdf(samples), bj_null_quantile(25, 0.05));
  for (std::size_t i = 1; i <= 25; ++i) {
    CHECK(wide.plateau_lower(i) >= wide.plateau_lower(i - 1));
    CHECK(wide.plateau_upper(i) >= wide.plateau_upper(i - 1));
  }

  CHECK_THROWS_AS(bj_band(EmpiricalCdf({0.5, 0.7}), crit), std::invalid_argument);
}

TEST_CASE("bj bands are tighter than dkw in the tails") {
  const BjCriticalValue crit = bj_null_quantile(50, 0.1);
  const ConfidenceBand band =
      bj_band(EmpiricalCdf(std::vector<double>(50, 0.5)), crit);
  CHECK(band.plateau_upper(0) < dkw_radius(50, 0.1));
}

TEST_CASE("bj band coverage is exact under the null") {
  const std::size_t n = 30;
  const double alpha = 0.1;
  const double q = bj_null_quantile(n, alpha).q;
  const std::size_t trials = 5000;
  std::size_t covered = 0;
  std::vector<double> u(n);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_stream(404, t));
    for (double& v : u) v = rng.open01();
    covered += bj_statistic(EmpiricalCdf(u), TrueCdf::uniform01()) <= q ? 1 : 0;
  }
  const double rate = static_cast<double>(covered) / trials;
  const double sigma = std::sqrt(alpha * (1.0 - alpha) / trials);
  CHECK(std::abs(rate - (1.0 - alpha)) <= 3.0 * sigma);
}
