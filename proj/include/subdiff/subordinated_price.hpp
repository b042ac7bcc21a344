#pragma once

#include <cmath>
#include <vector>

#include "black_scholes.hpp"
#include "compensated.hpp"
#include "eval_config.hpp"
#include "inverse_subordinator.hpp"
#include "mwright.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "sim_types.hpp"

namespace subdiff {

namespace detail {

// Upper quadrature limit for int_0^inf F_alpha(u) C(t^alpha u, x) du. Starting
// where the tail envelope has decayed to ~e^-30, grow U until
// envelope(U) * x * U < target. Past that point the envelope falls faster
// than e^-u per unit u, so envelope(U) * U over-covers the discarded tail,
// and C <= x bounds the other factor.
inline double price_upper_limit(double alpha, double x, double target) {
    const double a0 = stable_a0(alpha);
    double u = std::pow(30.0 / a0, 1.0 - alpha);
    for (int i = 0; i < 200; ++i) {
        if (u >= 1.0 && f_alpha_tail_bound(alpha, u) * x * u < target)
            break;
        u *= 1.2;
    }
    return u;
}

} // namespace detail

// Price of the call under the randomized clock,
//   int_0^inf F_alpha(u) C(t^alpha u, x) du
// after substituting u = z / t^alpha in the defining integral. c.tau is
// ignored; the integration variable supplies it.
inline double subordinated_price_quadrature(double alpha, double t, ContractParams c,
                                            const QuadConfig& quad = {},
                                            const EvalConfig& cfg = {}) {
    check_alpha(alpha);
    c.tau = 0.0;
    c.validate();
    if (!(t > 0.0))
        throw std::domain_error("subordinated_price_quadrature: t must be positive");
    if (alpha == 1.0) {
        c.tau = t;
        return bs_price_classical(c);
    }
    const double ta = std::pow(t, alpha);
    const double upper = detail::price_upper_limit(alpha, c.x, quad.abs_tol / 10.0);
    auto integrand = [&](double u) {
        ContractParams cc = c;
        cc.tau = ta * u;
        return f_alpha(alpha, u, cfg) * bs_price_classical(cc);
    };
    return integrate_adaptive(integrand, 0.0, upper, quad);
}

struct McPrice {
    double price = 0.0;
    double std_error = 0.0;
};

// Same price by Monte Carlo over the operational time: average C(S(t), x)
// over exact draws of S(t). Draw i uses stream i derived from cfg.seed, and
// per-block partial sums are combined in block order, so the result is
// byte-identical for any worker count.
inline McPrice subordinated_price_mc(double alpha, double t, ContractParams c,
                                     const SimConfig& cfg) {
    check_alpha(alpha);
    c.tau = 0.0;
    c.validate();
    cfg.validate();
    if (!(t > 0.0))
        throw std::domain_error("subordinated_price_mc: t must be positive");
    if (alpha == 1.0) {
        c.tau = t;
        return {bs_price_classical(c), 0.0};
    }

    const std::uint64_t n = cfg.n_paths;
    constexpr std::size_t block = 8192;
    const std::size_t n_blocks = ((std::size_t)n + block - 1) / block;
    std::vector<double> part_sum(n_blocks, 0.0), part_sq(n_blocks, 0.0);
    for_each_block((std::size_t)n, block, [&](std::size_t b, std::size_t begin, std::size_t end) {
        compensated_sum<double> s, sq;
        for (std::size_t i = begin; i < end; ++i) {
            RngStream rng(cfg.seed, (std::uint64_t)i);
            ContractParams cc = c;
            cc.tau = sample_inverse_subordinator_exact(alpha, t, rng);
            const double v = bs_price_classical(cc);
            s.add(v);
            sq.add(v * v);
        }
        part_sum[b] = s.value();
        part_sq[b] = sq.value();
    });
    compensated_sum<double> total, total_sq;
    for (std::size_t b = 0; b < n_blocks; ++b) {
        total.add(part_sum[b]);
        total_sq.add(part_sq[b]);
    }
    const double mean = total.value() / (double)n;
    McPrice out;
    out.price = mean;
    if (n >= 2) {
        double var = (total_sq.value() - (double)n * mean * mean) / ((double)n - 1.0);
        if (var < 0.0)
            var = 0.0;
        out.std_error = std::sqrt(var / (double)n);
    }
    return out;
}

} // namespace subdiff
