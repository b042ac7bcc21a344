#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <subdiff/black_scholes.hpp>
#include <subdiff/compensated.hpp>
#include <subdiff/mwright.hpp>
#include <subdiff/sim_types.hpp>
#include <subdiff/subordinated_price.hpp>

namespace {

// Textbook call price in market units, written straight from the S N(d1) -
// K e^{-rT} N(d2) formula with its own erf-based normal CDF. The independent
// side of the bridge check below.
double bs_reference(double s, double k, double r, double sigma, double t) {
    auto cdf = [](double z) { return 0.5 * (1.0 + std::erf(z / std::sqrt(2.0))); };
    const double sr = sigma * std::sqrt(t);
    const double d1 = (std::log(s / k) + (r + 0.5 * sigma * sigma) * t) / sr;
    const double d2 = d1 - sr;
    return s * cdf(d1) - k * std::exp(-r * t) * cdf(d2);
}

// Fixed-step Simpson rule, n even.
template <class F>
double simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    subdiff::compensated_sum<double> s;
    s.add(f(a));
    s.add(f(b));
    for (int i = 1; i < n; ++i)
        s.add(f(a + i * h) * (i % 2 ? 4.0 : 2.0));
    return s.value() * h / 3.0;
}

} // namespace

TEST_CASE("zero maturity pays the intrinsic value") {
    subdiff::ContractParams c;
    c.x = 1.25;
    c.K = 1.0;
    REQUIRE(subdiff::bs_price_classical(c) == 0.25);
    c.x = 0.8;
    REQUIRE(subdiff::bs_price_classical(c) == 0.0);
}

TEST_CASE("at the money with no drift the price is an error function") {
    // d+- = +-sqrt(tau/2), so C = 2 Phi(sqrt(tau/2)) - 1 = erf(sqrt(tau)/2)
    for (double tau : {0.02, 0.5, 2.0}) {
        subdiff::ContractParams c;
        c.tau = tau;
        const double ref = std::erf(std::sqrt(tau) / 2.0);
        REQUIRE(std::fabs(subdiff::bs_price_classical(c) - ref) < 1e-14);
    }
}

TEST_CASE("a vanishing strike leaves the share itself") {
    subdiff::ContractParams c;
    c.x = 1.3;
    c.K = 1e-12;
    c.beta = 0.3;
    c.tau = 0.5;
    REQUIRE(std::fabs(subdiff::bs_price_classical(c) - c.x) < 1e-9);
}

TEST_CASE("market-unit prices agree with the textbook formula") {
    struct Pt {
        double s, k, r, sigma, t;
    };
    const Pt pts[] = {{100.0, 100.0, 0.05, 0.2, 1.0},
                      {100.0, 60.0, 0.03, 0.25, 0.5},
                      {100.0, 150.0, 0.01, 0.3, 2.0},
                      {50.0, 55.0, 0.0, 0.4, 0.25},
                      {120.0, 100.0, 0.07, 0.15, 3.0}};
    for (const Pt& p : pts) {
        const auto c = subdiff::map_real_params(p.s, p.k, p.r, p.sigma, p.t);
        const double got = subdiff::bs_price_classical(c);
        REQUIRE(std::fabs(got - bs_reference(p.s, p.k, p.r, p.sigma, p.t)) < 1e-8);
    }
    // standard worked example, value quoted to ten figures
    const auto c = subdiff::map_real_params(100.0, 100.0, 0.05, 0.2, 1.0);
    REQUIRE(std::fabs(subdiff::bs_price_classical(c) - 10.4505835722) < 1e-4);
}

TEST_CASE("put and call satisfy parity") {
    subdiff::ContractParams c;
    c.x = 1.1;
    c.K = 0.9;
    c.beta = 0.4;
    c.tau = 0.7;
    const double call = subdiff::bs_price_classical(c);
    const double put = subdiff::bs_put_classical(c);
    REQUIRE(std::fabs(call - put - (c.x - c.K * std::exp(-c.beta * c.tau))) < 1e-15);
    REQUIRE(put >= 0.0);
}

TEST_CASE("the randomized clock degenerates to the classical price at alpha one") {
    subdiff::ContractParams c;
    c.x = 1.05;
    c.K = 1.0;
    c.beta = 0.5;
    const double t = 0.8;
    subdiff::ContractParams cc = c;
    cc.tau = t;
    REQUIRE(subdiff::subordinated_price_quadrature(1.0, t, c)
            == subdiff::bs_price_classical(cc));

    subdiff::SimConfig cfg;
    const auto mc = subdiff::subordinated_price_mc(1.0, t, c, cfg);
    REQUIRE(mc.price == subdiff::bs_price_classical(cc));
    REQUIRE(mc.std_error == 0.0);
}

TEST_CASE("subordinated price matches a direct integral of the classical curve") {
    subdiff::ContractParams c;
    c.x = 1.1;
    c.K = 1.0;
    c.beta = 0.5;
    const double t = 1.0;
    for (double alpha : {0.5, 0.8}) {
        double u_max = 1.0;
        while (subdiff::f_alpha_tail_bound(alpha, u_max) > 1e-16)
            u_max *= 1.25;
        auto f = [&](double u) {
            subdiff::ContractParams cc = c;
            cc.tau = std::pow(t, alpha) * u;
            return subdiff::f_alpha(alpha, u) * subdiff::bs_price_classical(cc);
        };
        // The classical curve leaves the intrinsic value over a tau scale of
        // (ln x/K)^2/2 ~ 5e-3, so the panel count has to resolve that layer.
        const double ref = simpson(f, 0.0, u_max, 40000);
        const double got = subdiff::subordinated_price_quadrature(alpha, t, c);
        REQUIRE(std::fabs(got - ref) < 1e-8 * ref);
    }
}

TEST_CASE("short horizons collapse the price toward the intrinsic value") {
    subdiff::ContractParams c;
    c.x = 1.0;
    c.K = 1.0;
    const double near = subdiff::subordinated_price_quadrature(0.6, 1e-8, c);
    REQUIRE(near >= 0.0);
    REQUIRE(near < 0.01 * c.x);
    // longer clocks always command more premium
    const double p1 = subdiff::subordinated_price_quadrature(0.6, 0.5, c);
    const double p2 = subdiff::subordinated_price_quadrature(0.6, 1.5, c);
    REQUIRE(near < p1);
    REQUIRE(p1 < p2);
}

TEST_CASE("monte carlo and quadrature prices agree within the reported error") {
    subdiff::ContractParams c;
    c.x = 1.0;
    c.K = 1.0;
    c.beta = 0.5;
    const double alpha = 0.8, t = 1.0;
    const double quad = subdiff::subordinated_price_quadrature(alpha, t, c);

    subdiff::SimConfig cfg;
    cfg.seed = 77;
    cfg.n_paths = 200000;
    const auto mc = subdiff::subordinated_price_mc(alpha, t, c, cfg);
    REQUIRE(mc.std_error > 0.0);
    REQUIRE(std::fabs(mc.price - quad) < 3.0 * mc.std_error);

    // the reported error bar shrinks like 1/sqrt(n)
    subdiff::SimConfig small = cfg;
    small.n_paths = 2000;
    const auto mc_small = subdiff::subordinated_price_mc(alpha, t, c, small);
    REQUIRE(mc.std_error < 0.2 * mc_small.std_error);
}

TEST_CASE("prices respect arbitrage bounds and monotonicity in the spot") {
    const double alpha = 0.7, t = 1.2;
    double prev = 0.0;
    for (double x : {0.6, 0.8, 1.0, 1.2, 1.6}) {
        subdiff::ContractParams c;
        c.x = x;
        c.K = 1.0;
        c.beta = 0.3;
        const double s = subdiff::subordinated_price_quadrature(alpha, t, c);
        REQUIRE(s >= std::max(x - c.K, 0.0));
        REQUIRE(s <= x);
        REQUIRE(s > prev);
        prev = s;
    }
}

TEST_CASE("pricing interfaces reject inputs outside the contract") {
    subdiff::ContractParams bad;
    bad.x = -1.0;
    REQUIRE_THROWS_AS(subdiff::bs_price_classical(bad), std::domain_error);
    bad = subdiff::ContractParams{};
    bad.beta = -0.5;
    REQUIRE_THROWS_AS(bad.validate(), std::domain_error);

    REQUIRE_THROWS_AS(subdiff::map_real_params(1.0, 1.0, 0.05, 0.0, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(subdiff::map_real_params(1.0, 1.0, 0.05, 0.2, -1.0), std::domain_error);

    subdiff::ContractParams c;
    REQUIRE_THROWS_AS(subdiff::subordinated_price_quadrature(0.5, 0.0, c), std::domain_error);
    subdiff::SimConfig cfg;
    cfg.n_paths = 0;
    REQUIRE_THROWS_AS(subdiff::subordinated_price_mc(0.5, 1.0, c, cfg),
                      std::invalid_argument);
}
