#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include <subdiff/compensated.hpp>
#include <subdiff/ctrw.hpp>
#include <subdiff/gamma.hpp>
#include <subdiff/inverse_subordinator.hpp>
#include <subdiff/ks.hpp>
#include <subdiff/mittag_leffler.hpp>
#include <subdiff/parallel.hpp>
#include <subdiff/rng.hpp>
#include <subdiff/stable.hpp>

namespace {

struct MeanSe {
    double mean;
    double se;
};

// Sample mean with its standard error; draw(i) must be independent draws.
template <class F>
MeanSe mc_mean(std::size_t n, F draw) {
    subdiff::compensated_sum<double> s, s2;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = draw(i);
        s.add(v);
        s2.add(v * v);
    }
    const double mean = s.value() / (double)n;
    double var = (s2.value() - (double)n * mean * mean) / ((double)n - 1.0);
    if (var < 0.0)
        var = 0.0;
    return {mean, std::sqrt(var / (double)n)};
}

std::vector<double> exact_hitting_draws(double alpha, double t, std::size_t n,
                                        std::uint64_t seed) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        subdiff::RngStream rng(seed, i);
        out[i] = subdiff::sample_inverse_subordinator_exact(alpha, t, rng);
    }
    return out;
}

} // namespace

TEST_CASE("alpha one degenerates every sampler to the identity clock") {
    subdiff::RngStream rng(11, 0);
    REQUIRE(subdiff::sample_stable_increment(1.0, 0.25, rng) == 0.25);
    REQUIRE(subdiff::sample_inverse_subordinator_exact(1.0, 1.7, rng) == 1.7);

    subdiff::SimConfig cfg;
    cfg.t_max = 2.0;
    REQUIRE(subdiff::sample_inverse_subordinator(1.0, 1.3, cfg, rng) == 1.3);

    const std::vector<double> grid = {0.0, 0.5, 1.0, 1.5, 2.0};
    const auto path = subdiff::sample_inverse_path(1.0, grid, cfg, rng);
    REQUIRE(path.values == grid);

    REQUIRE(subdiff::ctrw_counting_sample(1.0, 1000, 7.9, rng) == 7);
    REQUIRE(subdiff::ctrw_counting_sample(1.0, 3, 7.9, rng) == 3);
}

TEST_CASE("stable increments reproduce their laplace transform") {
    const double dtau = 0.5;
    const std::size_t n = 200000;
    for (double alpha : {0.4, 0.7}) {
        for (double u : {0.3, 1.0, 3.0}) {
            subdiff::RngStream rng(101, (std::uint64_t)(alpha * 100 + u * 7));
            const auto r = mc_mean(n, [&](std::size_t) {
                return std::exp(-u * subdiff::sample_stable_increment(alpha, dtau, rng));
            });
            const double expected = std::exp(-dtau * std::pow(u, alpha));
            REQUIRE(std::fabs(r.mean - expected) < 3.0 * r.se + 1e-12);
        }
    }
}

TEST_CASE("stable increments are self-similar across step sizes") {
    const std::size_t n = 40000;
    const double alpha = 0.6;
    std::vector<double> coarse(n), scaled(n);
    for (std::size_t i = 0; i < n; ++i) {
        subdiff::RngStream ra(7, i);
        subdiff::RngStream rb(8, i);
        coarse[i] = subdiff::sample_stable_increment(alpha, 0.2, ra);
        scaled[i] = std::pow(2.0, 1.0 / alpha)
                    * subdiff::sample_stable_increment(alpha, 0.1, rb);
    }
    const double d = subdiff::ks_statistic(coarse, scaled);
    REQUIRE(d < subdiff::ks_critical_value(n, n, 0.01));
}

TEST_CASE("exact hitting-time draws match the mittag-leffler transform") {
    const double t = 1.3;
    const std::size_t n = 200000;
    for (double alpha : {0.4, 0.7}) {
        for (double u : {0.5, 2.0}) {
            subdiff::RngStream rng(202, (std::uint64_t)(alpha * 10 + u));
            const auto r = mc_mean(n, [&](std::size_t) {
                return std::exp(-u * subdiff::sample_inverse_subordinator_exact(alpha, t, rng));
            });
            const double expected =
                subdiff::mittag_leffler_neg(alpha, u * std::pow(t, alpha));
            REQUIRE(std::fabs(r.mean - expected) < 3.0 * r.se + 1e-12);
        }
    }
}

TEST_CASE("exact hitting-time draws have the right first two moments") {
    const double alpha = 0.6, t = 0.8;
    const std::size_t n = 300000;
    subdiff::RngStream rng(303, 0);
    std::vector<double> draws(n);
    for (std::size_t i = 0; i < n; ++i)
        draws[i] = subdiff::sample_inverse_subordinator_exact(alpha, t, rng);

    const auto m1 = mc_mean(n, [&](std::size_t i) { return draws[i]; });
    const auto m2 = mc_mean(n, [&](std::size_t i) { return draws[i] * draws[i]; });
    const double ta = std::pow(t, alpha);
    REQUIRE(std::fabs(m1.mean - ta / subdiff::gamma(1.0 + alpha)) < 3.0 * m1.se);
    REQUIRE(std::fabs(m2.mean - 2.0 * ta * ta / subdiff::gamma(1.0 + 2.0 * alpha))
            < 3.0 * m2.se);
}

TEST_CASE("hitting-time draws are self-similar in distribution") {
    const double alpha = 0.5, t = 1.3, c = 2.0;
    const std::size_t n = 30000;
    auto a = exact_hitting_draws(alpha, c * t, n, 404);
    auto b = exact_hitting_draws(alpha, t, n, 405);
    const double ca = std::pow(c, alpha);
    for (double& v : b)
        v *= ca;
    REQUIRE(subdiff::ks_statistic(a, b) < subdiff::ks_critical_value(n, n, 0.01));
}

TEST_CASE("discretized first passage agrees with the exact marginal law") {
    const double alpha = 0.6, t = 0.7;
    const std::size_t n = 20000;
    subdiff::SimConfig cfg;
    cfg.dtau = 1e-3;
    cfg.t_max = 1.0;
    std::vector<double> fpt(n);
    for (std::size_t i = 0; i < n; ++i) {
        subdiff::RngStream rng(506, i);
        fpt[i] = subdiff::sample_inverse_subordinator(alpha, t, cfg, rng);
    }
    const auto exact = exact_hitting_draws(alpha, t, n, 507);
    const double d = subdiff::ks_statistic(fpt, exact);
    REQUIRE(d < subdiff::ks_critical_value(n, n, 0.01));
}

TEST_CASE("hitting-time paths are monotone with flat stretches") {
    const double alpha = 0.5;
    subdiff::SimConfig cfg;
    cfg.dtau = 1e-3;
    cfg.t_max = 1.0;
    std::vector<double> grid(201);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = (double)i / 200.0;

    subdiff::RngStream rng(606, 0);
    const auto path = subdiff::sample_inverse_path(alpha, grid, cfg, rng);
    REQUIRE(path.values.size() == grid.size());
    REQUIRE(path.values.front() == 0.0);
    std::size_t flats = 0;
    for (std::size_t i = 1; i < path.values.size(); ++i) {
        REQUIRE(path.values[i] >= path.values[i - 1]);
        if (path.values[i] == path.values[i - 1])
            ++flats;
    }
    // trap dominance: a heavy jump of the parent clock freezes S across
    // several grid points, so a genuine path shows repeated values
    REQUIRE(flats > 0);
    REQUIRE(path.values.back() > 0.0);
}

TEST_CASE("renewal counting respects the unit floor of the waiting times") {
    subdiff::RngStream rng(707, 0);
    REQUIRE(subdiff::ctrw_counting_sample(0.6, 1000, 0.5, rng) == 0);
    REQUIRE(subdiff::ctrw_rescaled_count(0.6, 10.0, 0.05, 1000, rng) == 0.0);
    REQUIRE_THROWS_AS(subdiff::ctrw_rescaled_count(1.0, 10.0, 1.0, 1000, rng),
                      std::domain_error);
    REQUIRE_THROWS_AS(subdiff::ctrw_rescaled_path(0.6, -1.0, {0.0, 1.0}, rng),
                      std::domain_error);
    REQUIRE_THROWS_AS(subdiff::ctrw_rescaled_path(0.6, 10.0, {1.0, 0.5}, rng),
                      std::invalid_argument);
}

TEST_CASE("rescaled renewal counts converge to the hitting-time law") {
    const double alpha = 0.5, t = 1.0;
    const std::size_t n = 20000;
    const auto exact = exact_hitting_draws(alpha, t, n, 808);

    auto ks_at_scale = [&](double c, std::uint64_t seed) {
        std::vector<double> draws(n);
        for (std::size_t i = 0; i < n; ++i) {
            subdiff::RngStream rng(seed, i);
            draws[i] = subdiff::ctrw_rescaled_count(alpha, c, t, 1000000, rng);
        }
        return subdiff::ks_statistic(draws, exact);
    };

    const double d_coarse = ks_at_scale(10.0, 809);
    const double d_fine = ks_at_scale(10000.0, 810);
    REQUIRE(d_fine < d_coarse);
    REQUIRE(d_coarse < 0.6);
    REQUIRE(d_fine < 0.08);
}

TEST_CASE("a rescaled renewal path is one walk observed along the grid") {
    const double alpha = 0.45, c = 50.0;
    std::vector<double> grid(21);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = 0.1 * (double)i;

    subdiff::RngStream rng(909, 0);
    const auto path = subdiff::ctrw_rescaled_path(alpha, c, grid, rng);
    REQUIRE(path.grid == grid);
    REQUIRE(path.values.front() == 0.0);
    const double unit = subdiff::gamma(1.0 - alpha) / std::pow(c, alpha);
    for (std::size_t i = 0; i < path.values.size(); ++i) {
        if (i > 0)
            REQUIRE(path.values[i] >= path.values[i - 1]);
        const double k = path.values[i] / unit;
        REQUIRE(std::fabs(k - std::round(k)) < 1e-9);
    }

    subdiff::RngStream rng2(909, 0);
    const auto replay = subdiff::ctrw_rescaled_path(alpha, c, grid, rng2);
    REQUIRE(replay.values == path.values);
}

TEST_CASE("rng streams replay exactly and separate by index") {
    subdiff::RngStream a(123, 5);
    subdiff::RngStream b = a;
    for (int i = 0; i < 1000; ++i)
        REQUIRE(a.next_u64() == b.next_u64());

    subdiff::RngStream c(123, 5);
    subdiff::RngStream d(123, 6);
    bool differ = false;
    for (int i = 0; i < 64 && !differ; ++i)
        differ = c.next_u64() != d.next_u64();
    REQUIRE(differ);
}

TEST_CASE("rng variates have the right ranges and first moments") {
    const std::size_t n = 200000;
    subdiff::RngStream rng(31, 2);
    double lo = 1.0, hi = 0.0;
    const auto u = mc_mean(n, [&](std::size_t) {
        const double v = rng.uniform_open();
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        return v;
    });
    REQUIRE(lo > 0.0);
    REQUIRE(hi < 1.0);
    REQUIRE(std::fabs(u.mean - 0.5) < 3.0 * u.se);

    subdiff::RngStream rng_e(31, 3);
    const auto e = mc_mean(n, [&](std::size_t) {
        const double v = rng_e.exponential();
        REQUIRE(v > 0.0);
        return v;
    });
    REQUIRE(std::fabs(e.mean - 1.0) < 3.0 * e.se);

    subdiff::RngStream rng_z(31, 4);
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i)
        z[i] = rng_z.normal();
    const auto zm = mc_mean(n, [&](std::size_t i) { return z[i]; });
    const auto z2 = mc_mean(n, [&](std::size_t i) { return z[i] * z[i]; });
    REQUIRE(std::fabs(zm.mean) < 3.0 * zm.se);
    REQUIRE(std::fabs(z2.mean - 1.0) < 3.0 * z2.se);
}

TEST_CASE("ks machinery behaves on hand-checkable samples") {
    REQUIRE(subdiff::ks_statistic({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
    REQUIRE(subdiff::ks_statistic({1.0, 2.0}, {5.0, 6.0}) == 1.0);
    REQUIRE(subdiff::ks_statistic({1.0, 2.0}, {1.5}) == 0.5);
    // tied values must be consumed from both sides before comparing
    REQUIRE(subdiff::ks_statistic({1.0, 1.0}, {1.0}) == 0.0);
    REQUIRE_THROWS_AS(subdiff::ks_statistic({}, {1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(subdiff::ks_critical_value(10, 10, 0.0), std::domain_error);

    // at the 5% threshold the asymptotic p-value is 5% by construction
    const double d = subdiff::ks_critical_value(1000000, 1000000, 0.05);
    REQUIRE(std::fabs(subdiff::ks_pvalue(d, 1000000, 1000000) - 0.05) < 2e-3);
    REQUIRE(subdiff::ks_pvalue(1e-9, 100, 100) == 1.0);
}

TEST_CASE("block scheduling gives identical bytes for any worker count") {
    const std::size_t n = 100000;
    auto run = [&](const char* threads) {
        setenv("SUBDIFF_THREADS", threads, 1);
        std::vector<double> partial((n + 999) / 1000, 0.0);
        subdiff::for_each_block(n, 1000,
                                [&](std::size_t blk, std::size_t lo, std::size_t hi) {
                                    subdiff::compensated_sum<double> s;
                                    for (std::size_t i = lo; i < hi; ++i)
                                        s.add(std::sin(1e-3 * (double)i));
                                    partial[blk] = s.value();
                                });
        subdiff::compensated_sum<double> total;
        for (double v : partial)
            total.add(v);
        return total.value();
    };
    const double serial = run("1");
    const double threaded = run("4");
    unsetenv("SUBDIFF_THREADS");
    REQUIRE(serial == threaded);
}

TEST_CASE("worker count comes from the environment with a floor of one") {
    setenv("SUBDIFF_THREADS", "3", 1);
    REQUIRE(subdiff::max_workers() == 3);
    setenv("SUBDIFF_THREADS", "0", 1);
    REQUIRE(subdiff::max_workers() == 1);
    setenv("SUBDIFF_THREADS", "junk", 1);
    REQUIRE(subdiff::max_workers() == 1);
    unsetenv("SUBDIFF_THREADS");
    REQUIRE(subdiff::max_workers() >= 1);
}

TEST_CASE("worker exceptions surface instead of vanishing") {
    setenv("SUBDIFF_THREADS", "4", 1);
    REQUIRE_THROWS_AS(
        subdiff::for_each_block(64, 4,
                                [&](std::size_t blk, std::size_t, std::size_t) {
                                    if (blk == 3)
                                        throw std::runtime_error("deliberate");
                                }),
        std::runtime_error);
    unsetenv("SUBDIFF_THREADS");
}

TEST_CASE("sampler inputs outside the contract are rejected") {
    subdiff::RngStream rng(1, 0);
    subdiff::SimConfig cfg;
    REQUIRE_THROWS_AS(subdiff::sample_stable_increment(0.0, 0.1, rng), std::domain_error);
    REQUIRE_THROWS_AS(subdiff::sample_stable_increment(1.5, 0.1, rng), std::domain_error);
    REQUIRE_THROWS_AS(subdiff::sample_inverse_subordinator(0.5, 2.0, cfg, rng),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(subdiff::sample_inverse_subordinator(0.5, -0.1, cfg, rng),
                      std::invalid_argument);

    subdiff::SimConfig bad;
    bad.dtau = 0.0;
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    REQUIRE_THROWS_AS(subdiff::sample_inverse_path(0.5, {0.5, 0.2}, cfg, rng),
                      std::invalid_argument);
}
