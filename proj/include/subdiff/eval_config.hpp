#pragma once

#include <stdexcept>

namespace subdiff {

// Knobs for the special-function series/integral evaluators.
struct EvalConfig {
    double series_tol = 1e-14;     // relative truncation target for power series
    int max_terms = 2000;
    double regime_switch_z = 5.0;  // upper cap on the series region of f_alpha

    void validate() const {
        if (!(series_tol > 0.0))
            throw std::invalid_argument("EvalConfig: series_tol must be positive");
        if (max_terms < 1)
            throw std::invalid_argument("EvalConfig: max_terms must be >= 1");
        if (!(regime_switch_z > 0.0))
            throw std::invalid_argument("EvalConfig: regime_switch_z must be positive");
    }
};

// Shared check for the stability index. The subordinator degenerates to the
// identity at alpha = 1; most call sites admit that boundary, a few exclude it.
inline void check_alpha(double alpha, bool allow_one = true) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::domain_error("alpha must lie in (0, 1]");
    if (!allow_one && alpha == 1.0)
        throw std::domain_error("alpha = 1 is the degenerate point-mass case");
}

} // namespace subdiff
