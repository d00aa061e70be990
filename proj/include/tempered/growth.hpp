#pragma once

#include <utility>
#include <vector>

namespace tempered {

struct GrowthSample {
  double r = 0.0;
  double v = 0.0;
};

/// Least-squares power-law fit v ~ C r^exponent.
struct GrowthReport {
  double exponent = 0.0;
  double log_constant = 0.0;
  /// RMS of the log-log residual over the fitted range, divided by the
  /// log-span of v there.
  double relative_residual = 0.0;
  /// Exponent of the same fit on the lower half, for comparison.
  double lower_exponent = 0.0;
  bool super_polynomial = false;
  bool divergence = false;
  std::size_t samples_used = 0;
};

inline constexpr double kGrowthResidualThreshold = 0.1;

/// Fits on the upper half of the samples with v > 0. Requires at least five
/// samples with increasing r.
GrowthReport growth_fit(const std::vector<GrowthSample>& samples);

}  // namespace tempered
