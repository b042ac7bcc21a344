#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "normal.hpp"

namespace subdiff {

// Dimensionless call contract: beta = 2r/sigma^2 and tau = sigma^2 t/2 absorb
// the rate and the volatility, see map_real_params.
struct ContractParams {
    double x = 1.0;    // share price
    double K = 1.0;    // striking price
    double beta = 0.0; // 2r/sigma^2
    double tau = 0.0;  // dimensionless time

    void validate() const {
        if (!(x > 0.0) || !(K > 0.0))
            throw std::domain_error("ContractParams: x and K must be positive");
        if (!(beta >= 0.0))
            throw std::domain_error("ContractParams: beta must be nonnegative");
        if (!(tau >= 0.0))
            throw std::domain_error("ContractParams: tau must be nonnegative");
    }
};

// C(tau,x) = x Phi(d+) - K e^{-beta tau} Phi(d-),
// d+- = [ln(x/K) + tau (beta +- 1)] / sqrt(2 tau).
// tau = 0 returns the intrinsic value, which is the tau -> 0 limit.
inline double bs_price_classical(const ContractParams& c) {
    c.validate();
    if (c.tau == 0.0)
        return std::max(c.x - c.K, 0.0);
    const double root = std::sqrt(2.0 * c.tau);
    const double lm = std::log(c.x / c.K);
    const double d_plus = (lm + c.tau * (c.beta + 1.0)) / root;
    const double d_minus = (lm + c.tau * (c.beta - 1.0)) / root;
    return c.x * probability_integral(d_plus)
           - c.K * std::exp(-c.beta * c.tau) * probability_integral(d_minus);
}

// Put by parity, P = C - x + K e^{-beta tau}. Call-side machinery is the
// product; the put is a convenience on top of it.
inline double bs_put_classical(const ContractParams& c) {
    return bs_price_classical(c) - c.x + c.K * std::exp(-c.beta * c.tau);
}

// Bridge from market units (rate r, volatility sigma, calendar maturity) to
// the dimensionless contract. Matching the d+- expressions against the
// textbook formula forces beta = 2r/sigma^2 and tau = sigma^2 t/2.
inline ContractParams map_real_params(double x, double K, double r, double sigma,
                                      double t_real) {
    if (!(sigma > 0.0))
        throw std::domain_error("map_real_params: sigma must be positive");
    if (!(t_real >= 0.0))
        throw std::domain_error("map_real_params: t_real must be nonnegative");
    ContractParams c;
    c.x = x;
    c.K = K;
    c.beta = 2.0 * r / (sigma * sigma);
    c.tau = 0.5 * sigma * sigma * t_real;
    c.validate();
    return c;
}

} // namespace subdiff
