#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace subdiff {

// splitmix64, used only to expand (seed, stream) into generator state.
inline std::uint64_t splitmix64_next(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with streams derived deterministically from (seed, stream id).
// One instance per unit of Monte Carlo work; streams never depend on thread
// identity, so results are independent of scheduling and worker count.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t h = stream;
        std::uint64_t x = seed ^ splitmix64_next(h);
        bool nonzero = false;
        for (auto& w : s_) {
            w = splitmix64_next(x);
            nonzero |= (w != 0);
        }
        if (!nonzero)
            s_[0] = 0x9e3779b97f4a7c15ULL;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on the open interval (0, 1); never returns an endpoint, so logs
    // of the result are always finite.
    double uniform_open() {
        return ((next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    double exponential() {
        return -std::log(uniform_open());
    }

    // Box-Muller, cosine branch only. The sine mate is discarded on purpose:
    // no cached state means a draw consumes a fixed number of generator words.
    double normal() {
        double u1 = uniform_open();
        double u2 = uniform_open();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

} // namespace subdiff
