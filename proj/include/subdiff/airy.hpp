#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace subdiff {
namespace detail {

// One Taylor step for y'' = z*y. Coefficients about z0 follow the recurrence
// a[n+2] = (z0*a[n] + a[n-1]) / ((n+1)(n+2)), so a trusted (value, slope)
// pair can be moved anywhere on the real line in unit-sized hops. Extended
// precision because the Airy cross-checks sit at 1e-8..1e-9 absolute.
inline std::pair<long double, long double>
airy_taylor_step(long double z0, long double y, long double yp, long double h) {
    long double am = 0.0L;            // a[n-1]
    long double a0 = y;               // a[n]
    long double a1 = yp;              // a[n+1]
    long double hn = 1.0L;            // h^n
    long double sum = 0.0L, dsum = 0.0L;
    for (int n = 0; n < 160; ++n) {
        sum += a0 * hn;
        dsum += a1 * hn * (n + 1);    // sum of (n+1) a[n+1] h^n = y'(z0+h)
        long double a2 = (z0 * a0 + am) / ((n + 1.0L) * (n + 2.0L));
        am = a0;
        a0 = a1;
        a1 = a2;
        hn *= h;
        if (std::fabs(a0 * hn) < 1e-24L * std::fabs(sum) &&
            std::fabs(a1 * hn) < 1e-24L * (std::fabs(dsum) + 1e-30L) && n > 8)
            break;
    }
    return {sum, dsum};
}

// Large-z expansions for Ai and Ai' (z >= 8), truncated at the smallest term.
inline std::pair<long double, long double> airy_asymptotic(long double z) {
    const long double xi = (2.0L / 3.0L) * z * std::sqrt(z);
    long double u = 1.0L, v = 1.0L;      // u_k, v_k coefficient pair
    long double su = 1.0L, sv = 1.0L;
    long double pk = 1.0L;               // xi^-k
    long double prev = 1e30L;
    long double sgn = -1.0L;
    for (int k = 0; k < 60; ++k) {
        u *= (6.0L * k + 5.0L) * (6.0L * k + 1.0L) / (72.0L * (k + 1.0L));
        v = u * (6.0L * (k + 1.0L) + 1.0L) / (1.0L - 6.0L * (k + 1.0L));
        pk /= xi;
        long double tu = u * pk;
        if (std::fabs(tu) >= prev)
            break;                       // divergent tail reached
        su += sgn * tu;
        sv += sgn * v * pk;
        prev = std::fabs(tu);
        sgn = -sgn;
    }
    const long double sp = std::sqrt((long double)std::numbers::pi);
    long double q = std::exp(-xi) / (2.0L * sp);
    long double ai = q * su / std::pow(z, 0.25L);
    long double aip = -q * sv * std::pow(z, 0.25L);
    return {ai, aip};
}

inline std::pair<long double, long double> airy_pair(double z) {
    // Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3)
    static const long double a0 = std::pow(3.0L, -2.0L / 3.0L) / std::tgamma(2.0L / 3.0L);
    static const long double a1 = -std::pow(3.0L, -1.0L / 3.0L) / std::tgamma(1.0L / 3.0L);

    if (z >= 8.0)
        return airy_asymptotic(z);
    long double z0, y, yp;
    if (z > 5.0) {
        // Marching upward from 0 is unstable past ~5 (the growing companion
        // solution takes over), so come down from the asymptotic side instead.
        z0 = 8.0L;
        auto [v, vp] = airy_asymptotic(z0);
        y = v;
        yp = vp;
    } else {
        z0 = 0.0L;
        y = a0;
        yp = a1;
    }
    while (z0 != (long double)z) {
        long double h = (long double)z - z0;
        if (h > 1.0L) h = 1.0L;
        if (h < -1.0L) h = -1.0L;
        auto [v, vp] = airy_taylor_step(z0, y, yp, h);
        y = v;
        yp = vp;
        z0 += h;
    }
    return {y, yp};
}

} // namespace detail

// Airy function Ai on |z| <= 10, the validation oracle for the alpha = 1/3
// closed form. Taylor series recentred in unit steps from z = 0 (or from the
// large-z expansion at z = 8 where upward marching would be unstable).
inline double airy_ai(double z) {
    if (!(std::fabs(z) <= 10.0))
        throw std::domain_error("airy_ai: argument must satisfy |z| <= 10");
    return (double)detail::airy_pair(z).first;
}

// First derivative, same range and method.
inline double airy_ai_prime(double z) {
    if (!(std::fabs(z) <= 10.0))
        throw std::domain_error("airy_ai_prime: argument must satisfy |z| <= 10");
    return (double)detail::airy_pair(z).second;
}

} // namespace subdiff
