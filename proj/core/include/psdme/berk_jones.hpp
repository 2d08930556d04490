#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

#include "psdme/bands.hpp"
#include "psdme/empirical_cdf.hpp"
#include "psdme/true_cdf.hpp"

namespace psdme {

/// Bernoulli KL divergence a log(a/b) + (1-a) log((1-a)/(1-b)) with the
/// convention 0 log 0 = 0, so K(0,b) = -log(1-b) and K(1,b) = -log b.
/// Requires a in [0,1] and b in (0,1).
double bernoulli_kl(double a, double b);

/// The interval {u in (0,1) : bernoulli_kl(fhat, u) <= q}, clamped to
/// [0, 1]. The divergence is convex in u with minimum 0 at u = fhat, so the
/// set is an interval; each endpoint is located by bisection plus Newton
/// polish to within 1e-12 in u. Requires q > 0 and fhat in [0, 1].
std::pair<double, double> kl_invert(double fhat, double q);

/// sup_x bernoulli_kl(F_hat(x), F(x)), evaluated over the order-statistic
/// candidates (both adjacent plateau levels at each sample); table CDFs are
/// additionally probed at their knots. Throws std::domain_error when the
/// candidate CDF places mass 0 or 1 where the ECDF is strictly interior.
double bj_statistic(const EmpiricalCdf& ecdf, const TrueCdf& f);

/// P(lower[i] <= U_(i+1) <= upper[i] for all i) for the order statistics of
/// n independent uniforms, where n is the common array length.
///
/// Computed by the exact boundary-crossing recursion over the sorted
/// boundary grid: the count process N(t) is Markov with binomial
/// increments, and the per-step convolution is renormalized in a scaled
/// representation so it cannot underflow. Arrays must be nondecreasing with
/// 0 <= lower[i] <= upper[i] <= 1.
double noncrossing_probability(std::span<const double> lower,
                               std::span<const double> upper);

enum class BjMethod { ExactRecursion, MonteCarlo };

/// Critical value q with P(S_n <= q) = 1 - alpha under uniform sampling,
/// where S_n is the Berk-Jones statistic of n uniforms.
struct BjCriticalValue {
  std::size_t n = 0;
  double alpha = 0.0;
  double q = 0.0;
  BjMethod method = BjMethod::ExactRecursion;
  std::size_t mc_reps = 0;  // MonteCarlo only
};

/// Exact recursion for n <= 1000, Monte Carlo beyond.
BjCriticalValue bj_null_quantile(std::size_t n, double alpha);

/// Exact method: bisection over q; for each q the per-order-statistic
/// bounds come from kl_invert and the coverage from
/// noncrossing_probability. Monte Carlo method: empirical quantile over
/// mc_reps seeded repetitions, each drawn from its own counter-derived
/// substream so the result is independent of worker count.
BjCriticalValue bj_null_quantile(std::size_t n, double alpha, BjMethod method,
                                 std::size_t mc_reps = 100000,
                                 std::uint64_t seed = 0, unsigned workers = 1);

/// Pointwise band with plateau-i bounds kl_invert(i/n, crit.q); plateau 0
/// starts at 0 and plateau n ends at 1. Requires crit.n == ecdf.size().
/// meta, when given, supplies the selection provenance fields; alpha and n
/// are filled in here.
ConfidenceBand bj_band(EmpiricalCdf ecdf, const BjCriticalValue& crit,
                       BandMeta meta = {});

}  // namespace psdme
