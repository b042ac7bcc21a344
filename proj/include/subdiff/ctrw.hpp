#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "eval_config.hpp"
#include "gamma.hpp"
#include "rng.hpp"
#include "sim_types.hpp"

namespace subdiff {

// Renewal count N_t = max{n : T_1 + ... + T_n <= t} for i.i.d. Pareto waiting
// times P(T > x) = x^-a on x >= 1 (drawn as U^{-1/a}), the simplest law in the
// relevant domain of attraction. n_steps caps the number of waiting times
// drawn. The alpha = 1 surrogate uses deterministic unit waits, N_t = floor(t).
inline std::uint64_t ctrw_counting_sample(double alpha, std::uint64_t n_steps, double t,
                                          RngStream& rng) {
    check_alpha(alpha);
    if (alpha == 1.0) {
        double n = std::floor(t);
        if (n < 0.0)
            return 0;
        return n < (double)n_steps ? (std::uint64_t)n : n_steps;
    }
    double sum = 0.0;
    std::uint64_t n = 0;
    while (n < n_steps) {
        sum += std::pow(rng.uniform_open(), -1.0 / alpha);
        if (sum > t)
            break;
        ++n;
    }
    return n;
}

// Rescaled count Gamma(1-a) N_{ct} / c^a. For the Pareto tail above, sums of
// n waiting times grow like (n Gamma(1-a))^{1/a}, and inverting that norming
// sends the rescaled count to S(t) in distribution as c -> infinity. This is
// the concrete convergence the simulate/ctrw demos and tests exercise.
inline double ctrw_rescaled_count(double alpha, double c, double t, std::uint64_t budget,
                                  RngStream& rng) {
    check_alpha(alpha, /*allow_one=*/false);
    const std::uint64_t n = ctrw_counting_sample(alpha, budget, c * t, rng);
    return gamma(1.0 - alpha) * (double)n / std::pow(c, alpha);
}

// One rescaled-count trajectory observed at every grid time: the cumulative
// waits are walked once, so the values along the grid belong to a single
// realization. Waits are >= 1, which caps the count at c * t by itself.
inline SamplePath ctrw_rescaled_path(double alpha, double c, const std::vector<double>& t_grid,
                                     RngStream& rng) {
    check_alpha(alpha, /*allow_one=*/false);
    if (!(c > 0.0))
        throw std::domain_error("ctrw_rescaled_path: c must be positive");
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        if (t_grid[i] < 0.0 || (i > 0 && t_grid[i] < t_grid[i - 1]))
            throw std::invalid_argument("ctrw_rescaled_path: t_grid must be nondecreasing");
    SamplePath out;
    out.grid = t_grid;
    out.values.resize(t_grid.size());
    const double pref = gamma(1.0 - alpha) / std::pow(c, alpha);
    double next_arrival = std::pow(rng.uniform_open(), -1.0 / alpha);
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double horizon = c * t_grid[i];
        while (next_arrival <= horizon) {
            ++count;
            next_arrival += std::pow(rng.uniform_open(), -1.0 / alpha);
        }
        out.values[i] = pref * (double)count;
    }
    return out;
}

} // namespace subdiff
