#pragma once

#include <cstddef>

namespace psdme {

/// Power-family p-to-e calibrator f(p) = (1 - tau) * p^(-tau), tau in (0,1).
/// f is nonincreasing on (0, 1] and integrates to exactly 1 over (0, 1).
class PowerCalibrator {
 public:
  /// Throws std::invalid_argument unless tau is in the open interval (0,1).
  explicit PowerCalibrator(double tau);

  double tau() const noexcept { return tau_; }

  /// Calibrated e-value (1 - tau) * p^(-tau). Throws std::domain_error
  /// unless p is in (0, 1].
  double operator()(double p) const;

  /// Generalized inverse sup{u in [0,1] : f(u) >= y}, i.e.
  /// min(1, ((1 - tau) / y)^(1 / tau)). Requires y >= 1; may underflow to 0
  /// for tiny tau (use log_inverse where the logarithm is what matters).
  double inverse(double y) const;

  /// log of inverse(y), computed without intermediate underflow.
  double log_inverse(double y) const;

 private:
  double tau_;
};

/// Pointwise upper envelope of the power family over tau:
/// -exp(-1) / (p * log p) for p <= 1/e and 1 otherwise. Not itself a valid
/// calibrator. Throws std::domain_error unless p is in (0, 1].
double vovk_sellke(double p);

/// Inverse of the envelope: exp(W_lower(-1 / (e * y))) for y >= 1.
double vovk_sellke_inverse(double y);

/// The tau maximizing PowerCalibrator(tau).inverse(y) at the threshold
/// y = K / (delta * selected_size): tau* = 1 + 1 / W_lower(-delta *
/// selected_size / (e * K)), clamped to at least 1e-9 near the branch
/// point. At tau* the power-family inverse attains the envelope inverse.
/// Requires 1 <= selected_size <= num_configs and
/// delta * selected_size < num_configs.
double optimal_tau(double delta, std::size_t num_configs, std::size_t selected_size);

}  // namespace psdme
