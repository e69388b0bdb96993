#pragma once

// Constructed violation cases. Each returns a report flagged as a negative
// control; the harness is working when these reports fail.

#include <cstdint>

#include "pmelab/field.hpp"
#include "pmelab/report.hpp"

namespace pmelab {

/// Heat-kernel trajectory (t in [1, 2]) checked against the time-derivative
/// lower bound with the wrong exponent label_m. Fails for label_m > 3 in 1D.
CheckReport neg_ab_time_mislabel(double label_m = 4.0);

/// One snapshot relabelled to a later time without evolving it, then checked
/// against the gradient bound.
CheckReport neg_gradient_frozen(const Field& snapshot, double m, double h, double M, double relabel_t = 100.0);

/// Barenblatt m = 3 runs on three grids scanned with h = 1, whose spatial
/// exponent 1 exceeds the interface exponent 1/2, so the modulus grows with
/// refinement.
CheckReport neg_holder_supercritical(std::uint64_t seed = 20240229);

}  // namespace pmelab
