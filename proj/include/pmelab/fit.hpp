#pragma once

#include <span>

namespace pmelab {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares line through (log x, log y). All inputs must be positive.
LineFit log_log_fit(std::span<const double> x, std::span<const double> y);

}  // namespace pmelab
