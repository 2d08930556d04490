#pragma once

namespace psdme {

/// Lower real branch of the Lambert W function: the solution w <= -1 of
/// w * exp(w) = x for x in [-1/e, 0).
///
/// Halley iteration with a bisection safeguard on the bracket [-745, -1];
/// the absolute residual |w e^w - x| is below 1e-12 across the domain.
/// Throws std::domain_error outside [-1/e, 0).
double lambert_w_lower(double x);

}  // namespace psdme
