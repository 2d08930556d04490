#include "psdme/lambert_w.hpp"

#include <cmath>
#include <stdexcept>

namespace psdme {

namespace {

// h(w) = w + log(-w) - log(-x) shares the roots of w e^w = x on w < 0 and
// is monotone increasing on (-inf, -1]; used for the bisection safeguard.
double h_residual(double w, double log_neg_x) {
  return w + std::log(-w) - log_neg_x;
}

}  // namespace

double lambert_w_lower(double x) {
  const double inv_e = std::exp(-1.0);
  if (std::isnan(x) || x >= 0.0 || x < -inv_e * (1.0 + 8e-16)) {
    throw std::domain_error("lambert_w_lower requires x in [-1/e, 0)");
  }

  const double t = 1.0 + std::exp(1.0) * x;  // >= 0 up to rounding at the branch point
  if (t <= 0.0) return -1.0;

  double w;
  if (t < 0.25) {
    // Series around the branch point with p = -sqrt(2 (1 + e x)).
    const double p = -std::sqrt(2.0 * t);
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  } else {
    // Asymptotic guess for x -> 0-: w ~ log(-x) - log(-log(-x)).
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  w = std::min(w, -1.0);

  const double log_neg_x = std::log(-x);
  double lo = -745.0;  // exp underflows below; residuals there are < 1e-12 anyway
  double hi = -1.0;
  for (int iter = 0; iter < 100; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    // w e^w decreases on w <= -1, so f > 0 puts w left of the root.
    if (f > 0.0) {
      lo = std::max(lo, w);
    } else {
      hi = std::min(hi, w);
    }
    if (std::abs(f) <= 1e-14 * std::max(std::abs(x), 1e-300) || std::abs(f) == 0.0) break;

    // Halley step on f(w) = w e^w - x.
    const double deriv = ew * (w + 1.0);
    double next = w;
    if (deriv != 0.0) {
      const double halley_denom = deriv - (w + 2.0) * f / (2.0 * w + 2.0);
      next = halley_denom != 0.0 ? w - f / halley_denom : w - f / deriv;
    }
    if (!(next > lo) || !(next < hi) || !std::isfinite(next)) {
      // Bisect on the increasing form h when the step leaves the bracket.
      next = 0.5 * (lo + hi);
      if (h_residual(next, log_neg_x) < 0.0) {
        lo = next;
      } else {
        hi = next;
      }
      next = 0.5 * (lo + hi);
    }
    if (next == w) break;
    w = next;
  }
  return std::min(w, -1.0);
}

}  // namespace psdme
