#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "eval_config.hpp"
#include "rng.hpp"
#include "sim_types.hpp"
#include "stable_kernel.hpp"

namespace subdiff {

// One increment of the one-sided stable subordinator over operational time
// dtau, in the normalization E[exp(-u T(x))] = exp(-x u^a). Kanter's
// construction: T(1) = (A(pi U)/W)^{(1-a)/a} with U uniform, W unit
// exponential, then self-similarity scales by dtau^{1/a}. Everything runs in
// logs; near theta = pi the kernel blows up polynomially and the direct power
// would overflow. alpha = 1 degenerates to the deterministic clock.
inline double sample_stable_increment(double alpha, double dtau, RngStream& rng) {
    check_alpha(alpha);
    if (!(dtau > 0.0))
        throw std::invalid_argument("sample_stable_increment: dtau must be positive");
    if (alpha == 1.0)
        return dtau;
    const double theta = std::numbers::pi * rng.uniform_open();
    const double w = rng.exponential();
    const double la = detail::zolotarev_log_a(alpha, theta);
    return std::exp((std::log(dtau) + (1.0 - alpha) * (la - std::log(w))) / alpha);
}

// T sampled on a nondecreasing grid of operational times; values strictly
// increase wherever the grid does.
inline SamplePath sample_stable_path(double alpha, const std::vector<double>& tau_grid,
                                     RngStream& rng) {
    SamplePath p;
    p.grid = tau_grid;
    p.values.reserve(tau_grid.size());
    double t = 0.0;
    double prev_tau = 0.0;
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        if (i > 0 && tau_grid[i] < prev_tau)
            throw std::invalid_argument("sample_stable_path: grid must be nondecreasing");
        if (tau_grid[i] > prev_tau || (i == 0 && tau_grid[i] > 0.0))
            t += sample_stable_increment(alpha, tau_grid[i] - prev_tau, rng);
        prev_tau = tau_grid[i];
        p.values.push_back(t);
    }
    return p;
}

} // namespace subdiff
