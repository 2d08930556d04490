#include "psdme/berk_jones.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cdf_probes.hpp"
#include "psdme/rng.hpp"

namespace psdme {

namespace {

constexpr std::size_t kExactRecursionLimit = 1000;

// The roots of bernoulli_kl(a, .) = q can sit exponentially close to 0 or
// 1, so each side is solved in a log boundary coordinate: v = log(u) for
// the left root and w = log(1 - u) for the right. In these coordinates the
// divergence is monotone, evaluates stably however extreme the root, and
// its derivative stays bounded away from zero.

double kl_left_value(double a, double v) {  // u = exp(v)
  return a * (std::log(a) - v) +
         (1.0 - a) * (std::log1p(-a) - std::log1p(-std::exp(v)));
}

double kl_right_value(double a, double w) {  // u = 1 - exp(w)
  return a * (std::log(a) - std::log1p(-std::exp(w))) +
         (1.0 - a) * (std::log1p(-a) - w);
}

/// Root of bernoulli_kl(a, .) = q on one side of the minimum at u = a.
/// Requires a in [0, 1] and q > 0.
double kl_root(double a, double q, bool left_side) {
  if (a <= 0.0) return left_side ? 0.0 : -std::expm1(-q);
  if (a >= 1.0) return left_side ? std::exp(-q) : 1.0;
  const auto value = [&](double t) {
    return left_side ? kl_left_value(a, t) : kl_right_value(a, t);
  };
  const auto derivative = [&](double t) {
    if (left_side) {
      const double u = std::exp(t);
      return (u - a) / (1.0 - u);  // dK/dv, -> -a at the boundary
    }
    const double u = 1.0 - std::exp(t);
    return -(u - a) / std::max(u, 1e-300);  // dK/dw, -> -(1-a) at the boundary
  };

  // K grows linearly in the log coordinate with asymptotic slope a (left)
  // or 1 - a (right), which bounds how far the root can sit.
  const double boundary_slope = left_side ? a : 1.0 - a;
  double hi = left_side ? std::log(a) : std::log1p(-a);  // K == 0 here
  double lo = hi - (q + 1.0) / boundary_slope - 1.0;
  for (int guard = 0; guard < 64 && value(lo) <= q; ++guard) {
    lo -= (q + 1.0) / boundary_slope;
  }

  // Bisection keeps value(lo) > q >= value(hi).
  for (int iter = 0; iter < 80; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (value(mid) > q) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 6; ++iter) {
    const double deriv = derivative(t);
    if (deriv == 0.0) break;
    const double next = t - (value(t) - q) / deriv;
    if (!std::isfinite(next) || next <= lo || next >= hi) break;
    if (next == t) break;
    t = next;
  }
  const double u = left_side ? std::exp(t) : 1.0 - std::exp(t);
  return std::clamp(u, 0.0, 1.0);
}

/// Binomial(m, p) pmf over d in [dlo, dhi], seeded at the mode via lgamma
/// and extended by the pmf ratio recurrence in both directions.
void binomial_row(std::size_t m, double p, std::size_t dlo, std::size_t dhi,
                  std::vector<double>& out) {
  out.assign(dhi - dlo + 1, 0.0);
  if (p <= 0.0) {
    if (dlo == 0) out[0] = 1.0;
    return;
  }
  if (p >= 1.0) {
    if (m >= dlo && m <= dhi) out[m - dlo] = 1.0;
    return;
  }
  if (dlo > m) return;
  const double md = static_cast<double>(m);
  const auto mode = static_cast<std::size_t>(
      std::min(md, std::max(0.0, std::floor((md + 1.0) * p))));
  const std::size_t d0 = std::clamp(mode, dlo, std::min(dhi, m));
  const double logp = std::log(p);
  const double log1mp = std::log1p(-p);
  const double d0d = static_cast<double>(d0);
  double v = std::exp(std::lgamma(md + 1.0) - std::lgamma(d0d + 1.0) -
                      std::lgamma(md - d0d + 1.0) + d0d * logp + (md - d0d) * log1mp);
  out[d0 - dlo] = v;
  const double ratio = p / (1.0 - p);
  double up = v;
  for (std::size_t d = d0; d < std::min(dhi, m); ++d) {
    up *= ratio * static_cast<double>(m - d) / static_cast<double>(d + 1);
    out[d + 1 - dlo] = up;
  }
  double down = v;
  for (std::size_t d = d0; d > dlo; --d) {
    down *= static_cast<double>(d) / (ratio * static_cast<double>(m - d + 1));
    out[d - 1 - dlo] = down;
  }
}

/// Berk-Jones statistic of an already sorted uniform sample.
double bj_statistic_sorted_uniforms(const std::vector<double>& u) {
  const double n = static_cast<double>(u.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double hi_level = static_cast<double>(i + 1) / n;
    const double lo_level = static_cast<double>(i) / n;
    sup = std::max(sup, bernoulli_kl(hi_level, u[i]));
    sup = std::max(sup, bernoulli_kl(lo_level, u[i]));
  }
  return sup;
}

/// Per-order-statistic box for the event {BJ statistic <= q}: the k-th
/// uniform order statistic must stay within
/// [left root at k/n, right root at (k-1)/n]. Returns false when some box
/// is empty (coverage 0).
bool bj_boxes(std::size_t n, double q, std::vector<double>& lower,
              std::vector<double>& upper) {
  const double nd = static_cast<double>(n);
  lower.resize(n);
  upper.resize(n);
  for (std::size_t k = 1; k <= n; ++k) {
    lower[k - 1] = kl_root(static_cast<double>(k) / nd, q, true);
    upper[k - 1] = kl_root(static_cast<double>(k - 1) / nd, q, false);
  }
  // The roots are monotone in the plateau level; wash out rounding wobble.
  for (std::size_t k = 1; k < n; ++k) {
    lower[k] = std::max(lower[k], lower[k - 1]);
    upper[k] = std::max(upper[k], upper[k - 1]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (lower[k] > upper[k]) return false;
  }
  return true;
}

double bj_coverage(std::size_t n, double q, std::vector<double>& lower,
                   std::vector<double>& upper) {
  if (!bj_boxes(n, q, lower, upper)) return 0.0;
  return noncrossing_probability(lower, upper);
}

}  // namespace

double bernoulli_kl(double a, double b) {
  if (!(b > 0.0) || !(b < 1.0)) {
    throw std::domain_error("bernoulli_kl needs b in (0, 1)");
  }
  if (!(a >= 0.0) || !(a <= 1.0)) {
    throw std::domain_error("bernoulli_kl needs a in [0, 1]");
  }
  if (a <= 0.0) return -std::log1p(-b);
  if (a >= 1.0) return -std::log(b);
  return a * std::log(a / b) + (1.0 - a) * std::log((1.0 - a) / (1.0 - b));
}

std::pair<double, double> kl_invert(double fhat, double q) {
  if (!(q > 0.0)) throw std::domain_error("kl_invert needs q > 0");
  if (!(fhat >= 0.0) || !(fhat <= 1.0)) {
    throw std::domain_error("kl_invert needs fhat in [0, 1]");
  }
  return {kl_root(fhat, q, true), kl_root(fhat, q, false)};
}

double bj_statistic(const EmpiricalCdf& ecdf, const TrueCdf& f) {
  double sup = 0.0;
  detail::visit_discrepancy_candidates(ecdf, f, [&](double fhat, double ftrue) {
    if (ftrue <= 0.0) {
      if (fhat > 0.0) {
        throw std::domain_error("candidate CDF is 0 where the ECDF has mass");
      }
      return;  // K(0, 0+) -> 0
    }
    if (ftrue >= 1.0) {
      if (fhat < 1.0) {
        throw std::domain_error("candidate CDF is 1 where the ECDF is below 1");
      }
      return;
    }
    sup = std::max(sup, bernoulli_kl(fhat, ftrue));
  });
  return sup;
}

double noncrossing_probability(std::span<const double> lower,
                               std::span<const double> upper) {
  const std::size_t n = lower.size();
  if (n == 0 || upper.size() != n) {
    throw std::invalid_argument("bound arrays must be nonempty and equally sized");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower[i] >= 0.0) || !(upper[i] <= 1.0) || !(lower[i] <= upper[i])) {
      throw std::invalid_argument("bounds must satisfy 0 <= lower <= upper <= 1");
    }
    if (i > 0 && (lower[i] < lower[i - 1] || upper[i] < upper[i - 1])) {
      throw std::invalid_argument("bound arrays must be nondecreasing");
    }
  }

  // Sorted distinct boundary values; between them the count constraints are
  // constant and implied by monotonicity of the count process.
  std::vector<double> grid;
  grid.reserve(2 * n);
  grid.insert(grid.end(), lower.begin(), lower.end());
  grid.insert(grid.end(), upper.begin(), upper.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  // f holds P(counts admissible so far, N(t) = c) for c in [clo, chi],
  // renormalized each step with the log of the running scale kept aside.
  std::vector<double> f{1.0};
  std::vector<double> next;
  std::vector<double> row;
  std::size_t clo = 0;
  std::size_t chi = 0;
  double prev_t = 0.0;
  double log_scale = 0.0;

  for (double t : grid) {
    // Count must be >= #{upper <= t} and <= #{lower < t}.
    const auto r_min = static_cast<std::size_t>(
        std::upper_bound(upper.begin(), upper.end(), t) - upper.begin());
    const auto r_max = static_cast<std::size_t>(
        std::lower_bound(lower.begin(), lower.end(), t) - lower.begin());
    const std::size_t nlo = std::max(r_min, clo);
    const std::size_t nhi = std::min(r_max, n);
    if (nlo > nhi) return 0.0;

    double p = prev_t >= 1.0 ? 1.0 : (t - prev_t) / (1.0 - prev_t);
    p = std::clamp(p, 0.0, 1.0);

    next.assign(nhi - nlo + 1, 0.0);
    for (std::size_t c = clo; c <= chi; ++c) {
      const double weight = f[c - clo];
      if (weight <= 0.0 || c > nhi) continue;
      const std::size_t dlo = nlo > c ? nlo - c : 0;
      const std::size_t dhi = nhi - c;
      binomial_row(n - c, p, dlo, dhi, row);
      for (std::size_t d = dlo; d <= dhi; ++d) {
        next[c + d - nlo] += weight * row[d - dlo];
      }
    }

    double sum = 0.0;
    for (double v : next) sum += v;
    if (!(sum > 0.0)) return 0.0;
    log_scale += std::log(sum);
    const double inv = 1.0 / sum;
    for (double& v : next) v *= inv;

    f.swap(next);
    clo = nlo;
    chi = nhi;
    prev_t = t;
  }
  return std::min(1.0, std::exp(log_scale));
}

BjCriticalValue bj_null_quantile(std::size_t n, double alpha) {
  return n <= kExactRecursionLimit
             ? bj_null_quantile(n, alpha, BjMethod::ExactRecursion)
             : bj_null_quantile(n, alpha, BjMethod::MonteCarlo);
}

BjCriticalValue bj_null_quantile(std::size_t n, double alpha, BjMethod method,
                                 std::size_t mc_reps, std::uint64_t seed,
                                 unsigned workers) {
  if (n < 1) throw std::invalid_argument("sample count must be at least 1");
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }

  if (method == BjMethod::ExactRecursion) {
    const double target = 1.0 - alpha;
    double lo = std::log(2.0) * 1e-3;
    double hi = std::log(2.0 * static_cast<double>(n) / alpha) + 10.0;
    std::vector<double> a;
    std::vector<double> b;
    while (bj_coverage(n, hi, a, b) < target && hi < 1e4) hi *= 1.5;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (bj_coverage(n, mid, a, b) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
    }
    return {n, alpha, 0.5 * (lo + hi), BjMethod::ExactRecursion, 0};
  }

  if (mc_reps < 1) throw std::invalid_argument("mc_reps must be at least 1");
  std::vector<double> stats(mc_reps);
  const auto run = [&](std::size_t begin, std::size_t end) {
    std::vector<double> u(n);
    for (std::size_t rep = begin; rep < end; ++rep) {
      Rng rng(derive_stream(seed, rep));
      for (double& v : u) v = rng.open01();
      std::sort(u.begin(), u.end());
      stats[rep] = bj_statistic_sorted_uniforms(u);
    }
  };
  const unsigned used = std::max(1u, std::min<unsigned>(workers, mc_reps));
  if (used == 1) {
    run(0, mc_reps);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(used);
    const std::size_t chunk = (mc_reps + used - 1) / used;
    for (unsigned w = 0; w < used; ++w) {
      const std::size_t begin = static_cast<std::size_t>(w) * chunk;
      const std::size_t end = std::min(mc_reps, begin + chunk);
      if (begin < end) pool.emplace_back(run, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  std::sort(stats.begin(), stats.end());
  auto rank = static_cast<std::size_t>(
      std::ceil((1.0 - alpha) * static_cast<double>(mc_reps)));
  rank = std::clamp<std::size_t>(rank, 1, mc_reps);
  return {n, alpha, stats[rank - 1], BjMethod::MonteCarlo, mc_reps};
}

ConfidenceBand bj_band(EmpiricalCdf ecdf, const BjCriticalValue& crit,
                       BandMeta meta) {
  if (crit.n != ecdf.size()) {
    throw std::invalid_argument("critical value was computed for a different sample count");
  }
  if (!(crit.q > 0.0)) throw std::invalid_argument("critical value must be positive");

  const std::size_t n = ecdf.size();
  const double nd = static_cast<double>(n);
  std::vector<double> lower(n + 1);
  std::vector<double> upper(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const auto [lo, hi] = kl_invert(static_cast<double>(i) / nd, crit.q);
    lower[i] = lo;
    upper[i] = hi;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    lower[i] = std::max(lower[i], lower[i - 1]);
    upper[i] = std::max(upper[i], upper[i - 1]);
  }
  meta.alpha = crit.alpha;
  return ConfidenceBand::pointwise(std::move(ecdf), std::move(lower), std::move(upper),
                                   std::move(meta));
}

}  // namespace psdme
