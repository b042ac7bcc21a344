#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "eval_config.hpp"
#include "gamma.hpp"
#include "inverse_subordinator.hpp"
#include "mwright.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "sim_types.hpp"

namespace subdiff {

struct ModelParams {
    double alpha = 0.5;
    double D = 1.0; // units length^2 / time^alpha

    void validate() const {
        check_alpha(alpha);
        if (!(D > 0.0))
            throw std::domain_error("ModelParams: D must be positive");
    }
};

struct DensityGrid {
    std::vector<double> x_grid; // strictly increasing
    std::vector<double> values;
    double t = 0.0;
};

// Density of B_tau with Var(B_tau) = D tau / 2. This variance convention is
// what makes the density integral, the moment formula and the Monte Carlo
// increments consistent with each other; note it differs from the common
// 2*kappa normalization.
inline double gaussian_parent_density(double D, double tau, double x) {
    if (!(D > 0.0) || !(tau > 0.0))
        throw std::domain_error("gaussian_parent_density: D and tau must be positive");
    return std::exp(-x * x / (D * tau)) / std::sqrt(std::numbers::pi * D * tau);
}

// p(t,x) = int_0^inf F_alpha(z) p_parent(t^alpha z, x) dz, evaluated after the
// substitution z = w^2 which removes the 1/sqrt(z) endpoint singularity:
//   p(t,x) = 2/sqrt(pi D t^alpha) int_0^inf F_alpha(w^2) exp(-x^2/(D t^alpha w^2)) dw.
// The domain is truncated where the F_alpha tail envelope falls below ~1e-18;
// the Gaussian factor is <= 1 so the discarded mass is below that too.
inline double subordinated_density(const ModelParams& params, double t, double x,
                                   const QuadConfig& quad = {}, const EvalConfig& cfg = {}) {
    params.validate();
    if (!(t > 0.0))
        throw std::domain_error("subordinated_density: t must be positive");
    if (params.alpha == 1.0)
        return gaussian_parent_density(params.D, t, x);

    const double alpha = params.alpha;
    const double scale = params.D * std::pow(t, alpha);
    const double b = x * x / scale;
    const double w_max =
        1.05 * std::pow(45.0 / detail::stable_a0(alpha), 0.5 * (1.0 - alpha));
    auto integrand = [&](double w) {
        if (w <= 0.0)
            return x == 0.0 ? f_alpha(alpha, 0.0, cfg) : 0.0;
        return f_alpha(alpha, w * w, cfg) * std::exp(-b / (w * w));
    };
    const double integral = integrate_adaptive(integrand, 0.0, w_max, quad);
    return 2.0 / std::sqrt(std::numbers::pi * scale) * integral;
}

// (mean, second moment) of r_t in closed form.
inline std::pair<double, double> subordinated_moments(const ModelParams& params, double t) {
    params.validate();
    if (!(t > 0.0))
        throw std::domain_error("subordinated_moments: t must be positive");
    const double m2 = params.D * std::pow(t, params.alpha) / (2.0 * gamma(1.0 + params.alpha));
    return {0.0, m2};
}

// One path of r_t = B_{S(t)} on t_grid: draw the operational-time path first,
// then Gaussian increments with variance (D/2) * dS. Steps with dS == 0 draw
// no noise at all, so the path is exactly constant across trapping stretches.
inline SamplePath sample_subordinated_path(const ModelParams& params,
                                           const std::vector<double>& t_grid,
                                           const SimConfig& cfg, RngStream& rng) {
    params.validate();
    SamplePath s = sample_inverse_path(params.alpha, t_grid, cfg, rng);
    SamplePath out;
    out.grid = t_grid;
    out.values.resize(t_grid.size());
    double r = 0.0;
    double s_prev = 0.0; // S(0) = 0
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double ds = s.values[i] - s_prev;
        if (ds > 0.0)
            r += std::sqrt(0.5 * params.D * ds) * rng.normal();
        s_prev = s.values[i];
        out.values[i] = r;
    }
    return out;
}

// Tabulates subordinated_density on x_grid, parallel over points. Each value
// lands in its own slot, so the result does not depend on the worker count.
inline DensityGrid make_density_grid(const ModelParams& params, double t,
                                     const std::vector<double>& x_grid,
                                     const QuadConfig& quad = {}, const EvalConfig& cfg = {}) {
    for (std::size_t i = 1; i < x_grid.size(); ++i)
        if (!(x_grid[i] > x_grid[i - 1]))
            throw std::invalid_argument("make_density_grid: x_grid must be strictly increasing");
    DensityGrid g;
    g.t = t;
    g.x_grid = x_grid;
    g.values.resize(x_grid.size());
    for_each_block(x_grid.size(), 8, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            g.values[i] = subordinated_density(params, t, x_grid[i], quad, cfg);
    });
    return g;
}

} // namespace subdiff
