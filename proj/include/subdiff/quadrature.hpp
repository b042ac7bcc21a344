#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "compensated.hpp"
#include "errors.hpp"

namespace subdiff {

struct QuadConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 250;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;       // estimated absolute error
    int subdivisions = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod nodes with the embedded 7-point Gauss rule.
// Even indices are Kronrod-only abscissae, odd indices the Gauss points.
inline constexpr double gk_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084728124823743821309758,
};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

// One Gauss-Kronrod pass over [a, b]. The error estimate is the usual
// scaled-difference heuristic: |K15 - G7| sharpened against the integral of
// |f - mean|, which keeps the estimate honest on nearly-flat integrands.
template <class F>
Segment gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv1[7], fv2[7];
    const double fc = f(c);
    double resk = gk_wk[7] * fc;
    double resg = gk_wg[3] * fc;
    double resabs = gk_wk[7] * std::fabs(fc);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * gk_x[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += gk_wk[j] * (f1 + f2);
        resabs += gk_wk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1)
            resg += gk_wg[j / 2] * (f1 + f2);
    }
    const double reskh = 0.5 * resk;
    double resasc = gk_wk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += gk_wk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    resasc *= std::fabs(h);
    resabs *= std::fabs(h);

    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * resabs);
    return {a, b, resk * h, err};
}

} // namespace detail

// Globally adaptive bisection on [a, b], always refining the segment with the
// largest error estimate. Infinite or singular endpoints are the caller's
// problem: every user in this library substitutes/truncates first so that the
// integrand arrives finite.
template <class F>
QuadResult try_integrate_adaptive(F&& f, double a, double b, const QuadConfig& cfg = {}) {
    std::vector<detail::Segment> segs;
    segs.reserve(64);
    segs.push_back(detail::gk15(f, a, b));
    double total = segs[0].value;
    double toterr = segs[0].error;

    while ((int)segs.size() < cfg.max_subdivisions) {
        if (toterr <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total)))
            break;
        std::pop_heap(segs.begin(), segs.end());
        detail::Segment worst = segs.back();
        segs.pop_back();
        total -= worst.value;
        toterr -= worst.error;
        const double m = 0.5 * (worst.a + worst.b);
        for (detail::Segment s : {detail::gk15(f, worst.a, m), detail::gk15(f, m, worst.b)}) {
            total += s.value;
            toterr += s.error;
            segs.push_back(s);
            std::push_heap(segs.begin(), segs.end());
        }
    }

    // Recompute the totals with compensation; the incremental bookkeeping
    // above drifts after many splits.
    compensated_sum<double> v, e;
    for (const auto& s : segs) {
        v.add(s.value);
        e.add(s.error);
    }
    QuadResult r;
    r.value = v.value();
    r.error = e.value();
    r.subdivisions = (int)segs.size();
    r.converged = r.error <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(r.value));
    return r;
}

template <class F>
double integrate_adaptive(F&& f, double a, double b, const QuadConfig& cfg = {}) {
    QuadResult r = try_integrate_adaptive(f, a, b, cfg);
    if (!r.converged)
        throw convergence_error("adaptive quadrature ran out of subdivisions",
                                r.error, std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(r.value)));
    return r.value;
}

} // namespace subdiff
