#include "support/oracles.hpp"

#include "skipdft/error.hpp"
#include "skipdft/periodogram.hpp"
#include "skipdft/spectral.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace skipdft;
using Catch::Approx;

TEST_CASE("sample_autocovariance", "[periodogram]") {
    CHECK(sample_autocovariance(TimeSeries{1.0, -1.0, 1.0, -1.0}, 0) == Approx(1.0));
    CHECK(sample_autocovariance(TimeSeries{1.0, 2.0, 3.0, 4.0}, 1) == Approx(0.3125).epsilon(1e-14));
    CHECK(oracle::autocov({1.0, 2.0, 3.0, 4.0}, 1) == Approx(0.3125).epsilon(1e-14));
    CHECK_THROWS_AS(sample_autocovariance(TimeSeries{1.0, 2.0}, 2), InvalidInput);
    CHECK_THROWS_AS(sample_autocovariance(TimeSeries{1.0, 2.0}, -2), InvalidInput);

    std::mt19937_64 rng(31);
    const auto x = oracle::random_series(rng, 40);
    const TimeSeries ts(x);
    for (long k = 0; k < 40; ++k) {
        CHECK(sample_autocovariance(ts, k) == sample_autocovariance(ts, -k));
        CHECK(sample_autocovariance(ts, k) == Approx(oracle::autocov(x, k)).margin(1e-13));
    }
}

TEST_CASE("periodogram examples", "[periodogram]") {
    SECTION("constant series is identically zero") {
        const auto I = periodogram_at_fourier(TimeSeries(std::vector<double>(9, 3.3)));
        for (double v : I.values()) CHECK(v == 0.0);
    }
    SECTION("x = 1,2,3,4: both defining formulas agree") {
        const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
        const auto I = periodogram_at_fourier(TimeSeries(x));
        for (std::size_t k = 1; k <= 4; ++k) {
            const long l = oracle::index_of(4, k);
            const double lambda = oracle::two_pi * static_cast<double>(l) / 4.0;
            if (l == 0) {
                CHECK(I[k - 1] == 0.0);
                continue;
            }
            CHECK(std::abs(oracle::periodogram_at(x, lambda) - oracle::periodogram_from_autocov(x, lambda)) <= 1e-12);
            CHECK(I[k - 1] == Approx(oracle::periodogram_at(x, lambda)).margin(1e-12));
        }
    }
    SECTION("T < 2 rejected") { CHECK_THROWS_AS(periodogram_at_fourier(TimeSeries{1.0}), InvalidInput); }
}

TEST_CASE("periodogram properties", "[periodogram]") {
    std::mt19937_64 rng(32);
    for (std::size_t T = 2; T <= 64; ++T) {
        auto x = oracle::random_series(rng, T);
        for (auto& v : x) v += 4.0;  // nonzero mean
        const TimeSeries ts(x);
        const auto z = compute_dft(ts);
        const auto I = periodogram_at_fourier(ts);
        for (std::size_t p = 0; p < T; ++p) {
            const long l = z.index_at(p);
            CHECK(I[p] >= 0.0);
            if (l == 0) {
                CHECK(I[p] == 0.0);
            } else {
                CHECK(std::abs(I[p] - std::norm(z[p])) <= 1e-10 * std::max(1.0, I[p]));
                CHECK(I.at_index(l) == Approx(I.at_index(-l)).margin(1e-10));
                const double lambda = fourier_frequency(T, l);
                CHECK(I[p] == Approx(oracle::periodogram_from_autocov(x, lambda)).margin(1e-9));
            }
            CHECK(I.at_index(l + static_cast<long>(T)) == I[p]);
        }
    }
}

TEST_CASE("aliasing identity, brute force first", "[periodogram]") {
    std::mt19937_64 rng(33);
    // brute force: direct DFT oracle plus direct autocovariances, no library code
    for (std::size_t T = 2; T <= 32; ++T) {
        const auto x = oracle::random_series(rng, T);
        for (std::size_t k = 0; k < T; ++k) {
            const auto g = [k](double lambda) { return std::polar(1.0, static_cast<double>(k) * lambda); };
            const double lhs = oracle::spectral_mean(x, g);
            const double rhs = k == 0 ? oracle::autocov(x, 0)
                                      : oracle::autocov(x, static_cast<long>(k)) +
                                            oracle::autocov(x, static_cast<long>(T - k));
            CHECK(lhs == Approx(rhs).margin(1e-9));
        }
    }
    // library
    for (std::size_t T = 2; T <= 64; ++T) {
        const auto x = oracle::random_series(rng, T);
        const TimeSeries ts(x);
        for (std::size_t k = 0; k < T; ++k) {
            const auto v = spectral_mean_full(ts, SpectralFunctional::exponential(static_cast<long>(k))).value;
            const double rhs = k == 0 ? sample_autocovariance(ts, 0)
                                      : sample_autocovariance(ts, static_cast<long>(k)) +
                                            sample_autocovariance(ts, static_cast<long>(T - k));
            CHECK(v == Approx(rhs).margin(1e-9));
        }
    }
}
