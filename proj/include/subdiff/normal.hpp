#pragma once

#include <cmath>
#include <numbers>

namespace subdiff {

// Standard normal CDF. erfc keeps the left tail accurate where 1 - erf would
// cancel; the right tail saturates to 1 as it should.
inline double probability_integral(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

// Standard normal density, used by a few diagnostics.
inline double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

} // namespace subdiff
