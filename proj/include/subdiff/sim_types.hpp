#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace subdiff {

// Reproducibility contract: identical (seed, n_paths, dtau) reproduce
// bit-identical sample sets regardless of worker count.
struct SimConfig {
    std::uint64_t seed = 1;
    std::size_t n_paths = 1;
    double dtau = 1e-3;    // operational-time step for T-path discretization
    double t_max = 1.0;

    void validate() const {
        if (n_paths < 1)
            throw std::invalid_argument("SimConfig: n_paths must be >= 1");
        if (!(dtau > 0.0))
            throw std::invalid_argument("SimConfig: dtau must be positive");
        if (!(t_max > 0.0))
            throw std::invalid_argument("SimConfig: t_max must be positive");
    }
};

// A process observed on a nondecreasing parameter grid. T-paths are strictly
// increasing, S-paths weakly increasing (flat stretches are the trapping
// events), position paths are unconstrained.
struct SamplePath {
    std::vector<double> grid;
    std::vector<double> values;
};

} // namespace subdiff
