#pragma once

#include "psdme/empirical_cdf.hpp"
#include "psdme/true_cdf.hpp"

namespace psdme::detail {

/// Invokes visit(fhat, ftrue) for every candidate pair at which the
/// supremum of a pointwise discrepancy between the ECDF and f can be
/// attained: both adjacent plateau levels at each order statistic, and for
/// table CDFs additionally both one-sided values at each knot plus the jump
/// to 1 past the last knot. The ECDF is constant and f is monotone (linear
/// or analytic) between consecutive candidates, so extremes occur only at
/// these pairs.
template <typename Visitor>
void visit_discrepancy_candidates(const EmpiricalCdf& ecdf, const TrueCdf& f,
                                  Visitor&& visit) {
  const double n = static_cast<double>(ecdf.size());
  const auto probe = [&](double x) {
    visit(static_cast<double>(ecdf.count_at_or_below(x)) / n, f(x));
    visit(static_cast<double>(ecdf.count_below(x)) / n, f.left_limit(x));
  };
  for (double x : ecdf.sorted_values()) probe(x);
  if (f.kind() == TrueCdf::Kind::Table) {
    for (double t : f.knots()) probe(t);
    // f jumps to 1 immediately past the last knot.
    visit(static_cast<double>(ecdf.count_at_or_below(f.knots().back())) / n, 1.0);
  }
}

}  // namespace psdme::detail
