#pragma once

#include <cmath>
#include <numbers>

namespace subdiff {
namespace detail {

// Kernel shared by the integral representation of f_alpha and the stable
// sampler:
//   A(theta) = [sin(a theta)/sin theta]^{a/(1-a)} * sin((1-a) theta)/sin theta
// on (0, pi). A increases from A0 at 0+ and blows up like
// (pi-theta)^{-1/(1-a)} at pi, so everything is done in logs.
inline double zolotarev_log_a(double a, double theta) {
    const double b = a / (1.0 - a);
    if (theta <= 0.0)
        return std::log1p(-a) + b * std::log(a);   // log A(0+)
    const double ls = std::log(std::sin(theta));
    return b * (std::log(std::sin(a * theta)) - ls)
           + std::log(std::sin((1.0 - a) * theta)) - ls;
}

// A0 = A(0+) = (1-a) a^{a/(1-a)}: the decay constant in the stretched
// exponential tail exp(-A0 z^{1/(1-a)}) of f_alpha.
inline double stable_a0(double a) {
    return std::exp(std::log1p(-a) + a / (1.0 - a) * std::log(a));
}

} // namespace detail
} // namespace subdiff
