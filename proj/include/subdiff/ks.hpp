#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace subdiff {

// Two-sample Kolmogorov-Smirnov distance sup_x |F_a(x) - F_b(x)|. The scan
// consumes every copy of a tied value from both samples before the empirical
// distributions are compared, which is where naive merges go wrong.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_statistic: samples must be non-empty");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = (double)a.size(), nb = (double)b.size();
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v)
            ++i;
        while (j < b.size() && b[j] == v)
            ++j;
        d = std::max(d, std::fabs((double)i / na - (double)j / nb));
    }
    return d;
}

// Asymptotic rejection threshold at the given significance level,
// c(sig) sqrt((n+m)/(nm)) with c(sig) = sqrt(-ln(sig/2)/2).
inline double ks_critical_value(std::size_t n, std::size_t m, double significance) {
    if (!(significance > 0.0) || !(significance < 1.0))
        throw std::domain_error("ks_critical_value: significance must be in (0,1)");
    const double c = std::sqrt(-0.5 * std::log(0.5 * significance));
    const double nn = (double)n, mm = (double)m;
    return c * std::sqrt((nn + mm) / (nn * mm));
}

// Asymptotic p-value Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2),
// lambda = d sqrt(nm/(n+m)). Diagnostic companion to the hard threshold.
inline double ks_pvalue(double d, std::size_t n, std::size_t m) {
    const double nn = (double)n, mm = (double)m;
    const double lambda = d * std::sqrt(nn * mm / (nn + mm));
    if (lambda < 1e-3)
        return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * (double)k * (double)k * lambda * lambda);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-12)
            break;
    }
    const double p = 2.0 * sum;
    return std::clamp(p, 0.0, 1.0);
}

} // namespace subdiff
