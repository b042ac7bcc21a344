#pragma once

#include <cmath>
#include <numbers>
#include <optional>

#include "compensated.hpp"
#include "errors.hpp"
#include "eval_config.hpp"
#include "gamma.hpp"
#include "quadrature.hpp"
#include "stable_kernel.hpp"

namespace subdiff {
namespace detail {

// Upper end of the series regime. Past z^{1/(1-a)} * A0 ~ 7 the alternating
// series cancels away more digits than extended precision can spare, so the
// configured switch point is capped accordingly.
inline double mwright_series_cut(double a, const EvalConfig& cfg) {
    const double a0 = stable_a0(a);
    return std::min(cfg.regime_switch_z, std::pow(7.0 / a0, 1.0 - a));
}

// sum_k (-z)^k / (k! Gamma(1 - a - k a)), terms in log space with the
// reciprocal gamma reflected off the negative axis. Terms whose gamma
// argument lands on a pole are exactly zero and are skipped.
inline double mwright_series(double a, double z, const EvalConfig& cfg) {
    compensated_sum<long double> acc;
    const double lz = std::log(z);
    double prev = 1.0;
    for (int k = 0; k <= cfg.max_terms; ++k) {
        const double w = 1.0 - a - k * a;
        double lr, sign;
        if (!rgamma_log(w, lr, sign))
            continue;   // pole: exact zero, invisible to the stop criterion
        double lt = k * lz - log_abs_gamma(k + 1.0) + lr;
        double t = std::exp(lt);
        double signed_t = (k % 2 == 0) ? sign * t : -sign * t;
        acc.add((long double)signed_t);
        double scale = std::fabs((double)acc.value()) + 1e-300;
        if (k > 3 && t < cfg.series_tol * scale && prev < cfg.series_tol * scale)
            return (double)acc.value();
        prev = t;
    }
    throw convergence_error("f_alpha: series did not converge", prev, cfg.series_tol);
}

// Integral representation with a positive integrand,
//   F_a(z) = z^{a/(1-a)} / (pi (1-a)) * int_0^pi A(t) e^{-zeta A(t)} dt,
// zeta = z^{1/(1-a)}. Exact for all z > 0 with no cancellation; the
// dominant factor e^{-zeta A0} is pulled out so the quadrature only sees a
// bounded integrand. Powers of z are handled in logs: zeta itself overflows
// for alpha near 1 long before the result does.
inline double mwright_integral(double a, double z, const EvalConfig& cfg) {
    const double one_m = 1.0 - a;
    const double log_zeta = std::log(z) / one_m;
    const double a0 = stable_a0(a);
    const double zeta_a0 = std::exp(log_zeta + std::log(a0));
    const double log_pref = a * log_zeta - std::log(std::numbers::pi * one_m);
    if (zeta_a0 - log_pref > 745.0)
        return 0.0;    // result underflows double
    const double zeta = std::exp(log_zeta);
    auto f = [=](double theta) {
        double la = zolotarev_log_a(a, theta);
        double arg = la - zeta * (std::exp(la) - a0);
        return arg < -745.0 ? 0.0 : std::exp(arg);
    };
    QuadConfig qc;
    qc.abs_tol = 1e-280;
    qc.rel_tol = std::max(cfg.series_tol, 1e-13);
    qc.max_subdivisions = 300;
    double s = integrate_adaptive(f, 0.0, std::numbers::pi, qc);
    return std::exp(log_pref - zeta_a0 + std::log(s));
}

} // namespace detail

// Scale density F_alpha: entire, nonnegative, unit mass on [0, inf).
// F(0) = 1/Gamma(1-a); small and moderate z by the alternating series,
// everything past the cancellation threshold by the exact integral
// representation. alpha = 1 is the point mass at z = 1 and is rejected here;
// integral-weight consumers special-case it analytically.
inline double f_alpha(double alpha, double z, const EvalConfig& cfg = {}) {
    check_alpha(alpha, /*allow_one=*/false);
    cfg.validate();
    if (z < 0.0)
        throw std::domain_error("f_alpha: requires z >= 0");
    if (z == 0.0)
        return rgamma(1.0 - alpha);
    if (z <= detail::mwright_series_cut(alpha, cfg))
        return detail::mwright_series(alpha, z, cfg);
    return detail::mwright_integral(alpha, z, cfg);
}

// Saddle-point envelope of the tail,
//   F_a(z) ~ C z^{(a - 1/2)/(1-a)} exp(-A0 z^{1/(1-a)}),
// inflated by 3x so it can serve as a certified truncation bound for z >= 1.
inline double f_alpha_tail_bound(double alpha, double z) {
    check_alpha(alpha, false);
    if (z < 1.0)
        throw std::domain_error("f_alpha_tail_bound: valid for z >= 1 only");
    const double one_m = 1.0 - alpha;
    const double c = std::pow(alpha, (2.0 * alpha - 1.0) / (2.0 * one_m))
                     / std::sqrt(2.0 * std::numbers::pi * one_m);
    double le = (alpha - 0.5) / one_m * std::log(z)
                - detail::stable_a0(alpha) * std::exp(std::log(z) / one_m);
    return le < -745.0 ? 0.0 : 3.0 * c * std::exp(le);
}

// Location of the maximum of F_alpha. Monotone decreasing for a <= 1/2 (mode
// at 0, reported as "none"); unimodal with an interior maximum for a > 1/2,
// located by golden-section search.
inline std::optional<double> f_alpha_mode(double alpha, const EvalConfig& cfg = {}) {
    check_alpha(alpha, false);
    if (alpha <= 0.5)
        return std::nullopt;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = 2.0;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = f_alpha(alpha, x1, cfg);
    double f2 = f_alpha(alpha, x2, cfg);
    while (hi - lo > 1e-9) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f_alpha(alpha, x2, cfg);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f_alpha(alpha, x1, cfg);
        }
    }
    return 0.5 * (lo + hi);
}

// Density of the inverse subordinator S(t): p(t, x) = t^-a F_a(x / t^a).
inline double inverse_subordinator_density(double alpha, double t, double x,
                                           const EvalConfig& cfg = {}) {
    check_alpha(alpha, false);
    if (!(t > 0.0))
        throw std::domain_error("inverse_subordinator_density: requires t > 0");
    if (x < 0.0)
        throw std::domain_error("inverse_subordinator_density: requires x >= 0");
    const double ta = std::pow(t, alpha);
    return f_alpha(alpha, x / ta, cfg) / ta;
}

} // namespace subdiff
