#pragma once

#include <span>

namespace facewall {

/// Jensen-Shannon divergence in bits, in [0, 1]. Inputs are non-negative
/// weights of equal length and are renormalized before use; terms with zero
/// mass contribute nothing. Throws Error{kInternal, "empty-distribution"}
/// when either input sums to zero.
double jsd(std::span<const double> p, std::span<const double> q);

}  // namespace facewall
