#include "support/oracles.hpp"

#include "skipdft/error.hpp"
#include "skipdft/inference.hpp"
#include "skipdft/process.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <boost/math/distributions/normal.hpp>

using namespace skipdft;
using Catch::Approx;

namespace {

EmpiricalRootDistribution roots_from(std::vector<double> roots) {
    // b = 4 makes a_b = 2, so pass values r/2 with center 0
    for (auto& r : roots) r /= 2.0;
    return build_roots(std::span<const double>(roots), 0.0, RootScaling{}, SkipSamplePlan{8, 4, roots.size(), 8});
}

}  // namespace

TEST_CASE("build_roots", "[inference]") {
    const SkipSamplePlan plan{8, 4, 2, 8};
    const std::vector<double> vals{1.0, 3.0};
    const auto d = build_roots(std::span<const double>(vals), 2.0, RootScaling{}, plan);
    CHECK(d.roots()[0] == -2.0);
    CHECK(d.roots()[1] == 2.0);
    CHECK(d.center() == 2.0);

    const std::vector<double> same{5.0, 5.0, 5.0};
    const auto z = build_roots(std::span<const double>(same), 5.0, RootScaling{}, SkipSamplePlan{12, 4, 3, 12});
    for (double r : z.roots()) CHECK(r == 0.0);

    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(build_roots(std::span<const double>(one), 0.0, RootScaling{}, plan), InsufficientSubsamples);

    SECTION("statistics from different plans are rejected") {
        std::vector<StatisticValue> stats(2);
        stats[0].plan = plan;
        stats[1].plan = SkipSamplePlan{9, 4, 2, 8};
        CHECK_THROWS_AS(build_roots(std::span<const StatisticValue>(stats), 0.0, RootScaling{}, plan), InvalidInput);
    }
    SECTION("custom rates") {
        RootScaling s{1.0, [](double n) { return std::log(n); }};
        CHECK(s.rate(8.0) == Approx(8.0 * std::log(8.0)));
        CHECK(RootScaling{}.rate(16.0) == 4.0);
    }
}

TEST_CASE("cdf and quantile", "[inference]") {
    const auto d = roots_from({-2.0, 2.0});
    CHECK(d.cdf(-3.0) == 0.0);
    CHECK(d.cdf(2.0) == 1.0);
    CHECK(d.cdf(0.0) == 0.5);
    CHECK(d.cdf(-2.0) == 0.5);
    CHECK(d.quantile(0.5) == -2.0);
    CHECK(roots_from({1.0, 2.0, 3.0, 4.0}).quantile(0.75) == 3.0);
    const auto atom = roots_from({7.0, 7.0, 7.0});
    for (double p : {0.01, 0.5, 0.99}) CHECK(atom.quantile(p) == 7.0);
    CHECK_THROWS_AS(d.quantile(0.0), InvalidInput);
    CHECK_THROWS_AS(d.quantile(1.0), InvalidInput);

    SECTION("round trip cdf(quantile(p)) >= p") {
        std::mt19937_64 rng(51);
        for (std::size_t q : {2u, 3u, 7u, 10u, 64u}) {
            const auto d2 = roots_from(oracle::random_series(rng, q));
            for (int i = 1; i < 200; ++i) {
                const double p = i / 200.0;
                CHECK(d2.cdf(d2.quantile(p)) >= p);
            }
        }
    }
}

TEST_CASE("subsampling_ci", "[inference]") {
    const RootScaling unit{0.0, {}};  // a_n = 1
    const std::vector<double> vals{-2.0, -1.0, 1.0, 2.0};
    const SkipSamplePlan plan{16, 4, 4, 16};
    const auto d = build_roots(std::span<const double>(vals), 0.0, unit, plan);
    const auto ci = subsampling_ci(0.0, d, 0.5, unit, 16);
    // quantile(0.75) = 1 and quantile(0.25) = -2 under inf{x : F(x) >= p}
    CHECK(ci.lower == -1.0);
    CHECK(ci.upper == 2.0);

    const std::vector<double> flat(4, 0.3);
    const auto z = build_roots(std::span<const double>(flat), 0.3, RootScaling{}, plan);
    const auto zi = subsampling_ci(0.3, z, 0.1, RootScaling{}, 16);
    CHECK(zi.lower == 0.3);
    CHECK(zi.upper == 0.3);
    CHECK_THROWS_AS(subsampling_ci(0.0, d, 0.0, unit, 16), InvalidInput);

    SECTION("larger alpha never widens the interval") {
        std::mt19937_64 rng(52);
        const auto v = oracle::random_series(rng, 50);
        const auto dd = build_roots(std::span<const double>(v), 0.1, RootScaling{}, SkipSamplePlan{500, 10, 50, 500});
        double prev = std::numeric_limits<double>::infinity();
        for (double a = 0.01; a < 0.99; a += 0.01) {
            const auto c = subsampling_ci(0.1, dd, a, RootScaling{}, 500);
            CHECK(c.lower <= c.upper);
            CHECK(c.upper - c.lower <= prev);
            prev = c.upper - c.lower;
        }
    }
}

TEST_CASE("variance_estimator", "[inference]") {
    const SkipSamplePlan plan{8, 4, 2, 8};
    const std::vector<double> vals{1.0, 3.0};
    CHECK(variance_estimator(std::span<const double>(vals), RootScaling{}, plan).v_hat == 4.0);
    const std::vector<double> same{2.0, 2.0, 2.0};
    CHECK(variance_estimator(std::span<const double>(same), RootScaling{}, SkipSamplePlan{12, 4, 3, 12}).v_hat == 0.0);
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(variance_estimator(std::span<const double>(one), RootScaling{}, plan), InsufficientSubsamples);

    std::mt19937_64 rng(53);
    for (std::size_t q : {2u, 5u, 33u, 256u}) {
        auto v = oracle::random_series(rng, q);
        const SkipSamplePlan p{q * 16, 16, q, q * 16};
        const double vh = variance_estimator(std::span<const double>(v), RootScaling{}, p).v_hat;
        // a_b^2 times the divisor-q sample variance, via a one-pass textbook formula
        double s = 0.0, s2 = 0.0;
        for (double x : v) {
            s += x;
            s2 += x * x;
        }
        const double var_q = s2 / static_cast<double>(q) - (s / static_cast<double>(q)) * (s / static_cast<double>(q));
        CHECK(vh == Approx(16.0 * var_q).margin(1e-12));
        CHECK(vh >= 0.0);
        for (auto& x : v) x += 123.0;
        CHECK(variance_estimator(std::span<const double>(v), RootScaling{}, p).v_hat == Approx(vh).margin(1e-12));
    }
}

TEST_CASE("normal quantile and normal_ci", "[inference]") {
    const boost::math::normal_distribution<double> n;
    for (double p : {1e-6, 0.025, 0.3, 0.5, 0.8413, 0.975, 1 - 1e-6}) {
        CHECK(boost::math::cdf(n, normal_quantile(p)) == Approx(p).margin(1e-12));
    }
    CHECK(normal_quantile(0.975) == Approx(1.959963984540054).margin(1e-8));
    CHECK_THROWS_AS(normal_quantile(1.0), InvalidInput);

    VarianceEstimate zero;
    const auto degenerate = normal_ci(1.5, zero, 0.05, 100, RootScaling{});
    CHECK(degenerate.lower == 1.5);
    CHECK(degenerate.upper == 1.5);

    VarianceEstimate one;
    one.v_hat = 1.0;
    const auto ci = normal_ci(0.0, one, 0.3174, 100, RootScaling{});
    CHECK(ci.lower == Approx(-0.1).margin(1e-4));
    CHECK(ci.upper == Approx(0.1).margin(1e-4));
}

TEST_CASE("hybrid_variance", "[inference]") {
    VarianceEstimate v;
    v.v_hat = 1.0;
    CHECK(hybrid_variance(v, 3.0, 0.9).v_hat == 1.0);
    CHECK(hybrid_variance(v, 9.0, 0.0).v_hat == 1.0);
    const auto c = hybrid_variance(v, 6.0, 0.5);
    CHECK(c.v_hat == Approx(1.75));
    CHECK(c.corrected);
    const auto clipped = hybrid_variance(v, 1.0, 1.0);
    CHECK(clipped.v_hat == 0.0);
    CHECK(clipped.warning.has_value());
    CHECK_THROWS_AS(hybrid_variance(v, 0.5, 1.0), InvalidInput);
}

TEST_CASE("plug_in_spectral_mean_fhat", "[inference]") {
    CHECK(default_bandwidth(4096) == 16);
    CHECK(default_bandwidth(1000) == 10);
    CHECK(default_bandwidth(2) == 1);

    std::mt19937_64 rng(54);
    SECTION("bandwidth range") {
        const TimeSeries ts(oracle::random_series(rng, 20));
        CHECK_THROWS_AS(plug_in_spectral_mean_fhat(ts, SpectralFunctional::constant(1.0), 0), InvalidInput);
        CHECK_THROWS_AS(plug_in_spectral_mean_fhat(ts, SpectralFunctional::constant(1.0), 20), InvalidInput);
    }
    SECTION("Riemann sum of the Bartlett window equals the weighted autocovariances") {
        // for g = exp(i k lambda) with k <= M and M + k < T the grid sum picks out w_k gamma_k exactly
        const auto x = oracle::random_series(rng, 64);
        const TimeSeries ts(x);
        for (long k = 0; k <= 3; ++k) {
            const double v = plug_in_spectral_mean_fhat(ts, SpectralFunctional::exponential(k), 5);
            CHECK(v == Approx((1.0 - k / 6.0) * oracle::autocov(x, k)).margin(1e-12));
        }
    }
    SECTION("white noise, g = 1: close to sigma^2") {
        std::vector<double> est;
        for (std::uint64_t r = 0; r < 200; ++r) {
            const auto x = generate(white_noise(2.0), 1024, derive_seed(540, r));
            est.push_back(plug_in_spectral_mean_fhat(x, SpectralFunctional::constant(1.0), default_bandwidth(1024)));
        }
        double m = 0.0, ss = 0.0;
        for (double e : est) m += e;
        m /= 200.0;
        for (double e : est) ss += (e - m) * (e - m);
        const double se = std::sqrt(ss / 199.0 / 200.0);
        CHECK(std::abs(m - 2.0) <= 3.0 * se + 2.0 / 1024.0);
    }
    SECTION("AR(1), g = exp(i lambda): Bartlett target and the closed form") {
        // With M = floor(T^{1/3}) the Bartlett weight shrinks gamma_1 by M/(M+1);
        // the unbiased target is therefore (M/(M+1)) * 2/3. A wide window recovers 2/3 itself.
        const auto spec = ar1_process(0.5);
        const std::size_t T = 4096;
        const std::size_t M = default_bandwidth(T);
        std::vector<double> narrow, wide;
        for (std::uint64_t r = 0; r < 500; ++r) {
            const auto x = generate(spec, T, derive_seed(541, r));
            narrow.push_back(plug_in_spectral_mean_fhat(x, SpectralFunctional::exponential(1), M));
            wide.push_back(plug_in_spectral_mean_fhat(x, SpectralFunctional::exponential(1), 400));
        }
        auto stats = [](const std::vector<double>& v) {
            double m = 0.0, ss = 0.0;
            for (double e : v) m += e;
            m /= static_cast<double>(v.size());
            for (double e : v) ss += (e - m) * (e - m);
            return std::pair{m, std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()))};
        };
        const auto [mn, sen] = stats(narrow);
        const auto [mw, sew] = stats(wide);
        const double gamma1 = 2.0 / 3.0;
        const double w1 = static_cast<double>(M) / static_cast<double>(M + 1);
        // gamma_hat_1 itself carries a -gamma_1 (1 + ...)/T type bias of order 1e-3
        CHECK(std::abs(mn - w1 * gamma1) <= 3.0 * sen + 2e-3);
        CHECK(std::abs(mw - (400.0 / 401.0) * gamma1) <= 3.0 * sew + 2e-3);
    }
}

TEST_CASE("kolmogorov distances", "[inference]") {
    const auto d = roots_from({-1.0, 0.0, 1.0, 2.0});
    const auto heaviside = [](double x) { return x >= 0.5 ? 1.0 : 0.0; };
    CHECK(kolmogorov_distance(d, heaviside) == Approx(0.5));
    const boost::math::normal_distribution<double> n;
    const double ks = kolmogorov_distance(d, [&](double x) { return boost::math::cdf(n, x); });
    // brute force on a fine grid, including both sides of every jump
    double brute = 0.0;
    for (double x = -6.0; x <= 6.0; x += 1e-4) brute = std::max(brute, std::abs(d.cdf(x) - boost::math::cdf(n, x)));
    for (double r : d.roots()) {
        brute = std::max(brute, std::abs(d.cdf(r - 1e-12) - boost::math::cdf(n, r)));
    }
    CHECK(ks == Approx(brute).margin(1e-4));
    CHECK(kolmogorov_distance(d, d) == 0.0);
    const auto e = roots_from({-1.0, 0.5, 1.0, 3.0});
    CHECK(kolmogorov_distance(d, e) == Approx(0.25));
}

TEST_CASE("oracle decomposition of v_hat", "[inference]") {
    std::mt19937_64 rng(55);
    for (int rep = 0; rep < 50; ++rep) {
        const auto v = oracle::random_series(rng, 40);
        const double theta = 0.3;
        const SkipSamplePlan plan{40 * 25, 25, 40, 1000};
        const double a = 5.0;
        const double vh = variance_estimator(std::span<const double>(v), RootScaling{}, plan).v_hat;
        double tilde = 0.0, bar = 0.0;
        for (double x : v) {
            tilde += (x - theta) * (x - theta);
            bar += x;
        }
        tilde *= a * a / 40.0;
        bar /= 40.0;
        CHECK(std::abs(vh - (tilde - a * a * (bar - theta) * (bar - theta))) <= 1e-10);
    }
}
