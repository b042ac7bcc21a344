#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "eval_config.hpp"
#include "gamma.hpp"
#include "rng.hpp"
#include "sim_types.hpp"
#include "stable.hpp"

namespace subdiff {

// One draw of the hitting time S(t) = inf{x : T(x) > t} by discretized first
// passage: accumulate stable increments on the dtau grid until T crosses t.
// The crossing cell is then refined once in distribution: a fresh pair of
// half-step increments is drawn conditioned on reproducing the crossing
// (rejection), which tells us which half of the cell the passage happened in.
// The returned value is the left endpoint of the refined cell, so the bias is
// one-sided and O(dtau).
inline double sample_inverse_subordinator(double alpha, double t, const SimConfig& cfg,
                                          RngStream& rng) {
    check_alpha(alpha);
    cfg.validate();
    if (t < 0.0 || t > cfg.t_max)
        throw std::invalid_argument("sample_inverse_subordinator: t outside [0, t_max]");
    if (alpha == 1.0 || t == 0.0)
        return t;

    // E[steps] = t^a / (Gamma(1+a) dtau); the stretched-exponential tail of
    // S(t) makes 64x that effectively unreachable.
    const double mean_steps = std::pow(t, alpha) / (std::tgamma(1.0 + alpha) * cfg.dtau);
    const std::uint64_t cap = 100000 + (std::uint64_t)(64.0 * mean_steps);

    double big_t = 0.0;
    double tau = 0.0;
    for (std::uint64_t step = 0; step < cap; ++step) {
        const double inc = sample_stable_increment(alpha, cfg.dtau, rng);
        if (big_t + inc > t) {
            const double half = 0.5 * cfg.dtau;
            for (int tries = 0; tries < 64; ++tries) {
                const double h1 = sample_stable_increment(alpha, half, rng);
                const double h2 = sample_stable_increment(alpha, half, rng);
                if (big_t + h1 + h2 > t)
                    return (big_t + h1 > t) ? tau : tau + half;
            }
            return tau;   // refinement budget exhausted; coarse left endpoint
        }
        big_t += inc;
        tau += cfg.dtau;
    }
    throw budget_error("sample_inverse_subordinator: T-path failed to cross t "
                       "within the step cap");
}

// Marginal draw of S(t) without any discretization. First-passage duality
// gives P(S(t) <= x) = P(T(x) >= t), and T(x) = x^{1/a} T(1) in law, so
// S(t) = (t / T(1))^a in law with T(1) a Kanter draw. Exact and O(1); this is
// what the statistical acceptance checks and the Monte Carlo pricer use.
inline double sample_inverse_subordinator_exact(double alpha, double t, RngStream& rng) {
    check_alpha(alpha);
    if (t < 0.0)
        throw std::invalid_argument("sample_inverse_subordinator_exact: t must be >= 0");
    if (alpha == 1.0 || t == 0.0)
        return t;
    const double theta = std::numbers::pi * rng.uniform_open();
    const double w = rng.exponential();
    const double ln_t1 = (1.0 - alpha) / alpha
                         * (detail::zolotarev_log_a(alpha, theta) - std::log(w));
    return std::exp(alpha * (std::log(t) - ln_t1));
}

// One S-path on t_grid, read off a single discretized T-path as its
// generalized inverse with the left-point convention:
// S(t) = dtau * max{k : T(k dtau) <= t}. Weakly increasing by construction;
// flat stretches appear where one T jump clears several grid points.
inline SamplePath sample_inverse_path(double alpha, const std::vector<double>& t_grid,
                                      const SimConfig& cfg, RngStream& rng) {
    check_alpha(alpha);
    cfg.validate();
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] < 0.0 || t_grid[i] > cfg.t_max)
            throw std::invalid_argument("sample_inverse_path: grid outside [0, t_max]");
        if (i > 0 && t_grid[i] < t_grid[i - 1])
            throw std::invalid_argument("sample_inverse_path: grid must be nondecreasing");
    }
    SamplePath p;
    p.grid = t_grid;
    p.values.resize(t_grid.size());
    if (t_grid.empty())
        return p;
    if (alpha == 1.0) {
        p.values = t_grid;
        return p;
    }

    const double mean_steps =
        std::pow(cfg.t_max, alpha) / (std::tgamma(1.0 + alpha) * cfg.dtau);
    const std::uint64_t cap = 100000 + (std::uint64_t)(64.0 * mean_steps);

    double big_t = 0.0;   // T at the current grid point
    double tau = 0.0;
    std::size_t i = 0;
    while (i < t_grid.size() && t_grid[i] == 0.0)
        p.values[i++] = 0.0;
    std::uint64_t steps = 0;
    while (i < t_grid.size()) {
        const double inc = sample_stable_increment(alpha, cfg.dtau, rng);
        while (i < t_grid.size() && big_t + inc > t_grid[i])
            p.values[i++] = tau;
        big_t += inc;
        tau += cfg.dtau;
        if (++steps >= cap)
            throw budget_error("sample_inverse_path: T-path failed to cross the "
                               "grid within the step cap");
    }
    return p;
}

} // namespace subdiff
