#include "support/oracles.hpp"

#include "skipdft/dft.hpp"
#include "skipdft/error.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace skipdft;
using Catch::Approx;

namespace {

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

double max_imag(std::span<const Complex> v) {
    double worst = 0.0;
    for (const auto& c : v) worst = std::max(worst, std::abs(c.imag()));
    return worst;
}

}  // namespace

TEST_CASE("index helpers follow the centred convention", "[dft]") {
    CHECK(fourier_index(4, 1) == -1);
    CHECK(fourier_index(4, 2) == 0);
    CHECK(fourier_index(4, 4) == 2);
    CHECK(fourier_index(5, 1) == -2);
    CHECK(fourier_index(5, 5) == 2);
    for (std::size_t T : {1u, 2u, 5u, 8u, 13u}) {
        for (std::size_t k = 1; k <= T; ++k) CHECK(fourier_position(T, fourier_index(T, k)) == k);
        CHECK(fourier_position(T, fourier_index(T, 1) + static_cast<long>(T)) == 1);
    }
}

TEST_CASE("compute_dft small examples", "[dft]") {
    SECTION("T = 1 is the identity") {
        const auto z = compute_dft(TimeSeries{5.0});
        REQUIRE(z.size() == 1);
        CHECK(z[0].real() == Approx(5.0).margin(1e-15));
        CHECK(z[0].imag() == Approx(0.0).margin(1e-15));
    }
    SECTION("constant series lands in the zero-frequency bin") {
        const double c = 1.75;
        const auto z = compute_dft(TimeSeries{c, c, c, c});
        CHECK(std::abs(z[0]) < 1e-14);
        CHECK(std::abs(z[1] - Complex(2.0 * c, 0.0)) < 1e-14);
        CHECK(std::abs(z[2]) < 1e-14);
        CHECK(std::abs(z[3]) < 1e-14);
        CHECK(z.index_at(1) == 0);
    }
    SECTION("T = 3 against the direct sum") {
        const auto z = compute_dft(TimeSeries{1.0, 2.0, 3.0});
        const auto ref = oracle::dft({1.0, 2.0, 3.0});
        CHECK(max_abs_diff(z.entries(), ref) < 1e-12);
    }
    SECTION("empty input is rejected") {
        CHECK_THROWS_AS(TimeSeries(std::vector<double>{}), InvalidInput);
    }
}

TEST_CASE("compute_dft matches the direct sum for many lengths", "[dft]") {
    std::mt19937_64 rng(11);
    for (std::size_t T = 1; T <= 200; ++T) {
        const auto x = oracle::random_series(rng, T);
        const auto z = compute_dft(TimeSeries(x));
        INFO("T = " << T);
        CHECK(max_abs_diff(z.entries(), oracle::dft(x)) < 1e-9);
    }
    for (std::size_t T : {1000u, 1024u, 4096u}) {
        const auto x = oracle::random_series(rng, T);
        const auto z = compute_dft(TimeSeries(x));
        // spot-check a handful of entries against the direct formula
        for (std::size_t k : {std::size_t{1}, T / 3, T / 2, T - 1, T}) {
            const double lambda = oracle::two_pi * static_cast<double>(oracle::index_of(T, k)) / static_cast<double>(T);
            Complex acc = 0.0;
            for (std::size_t t = 1; t <= T; ++t) acc += std::polar(1.0, -static_cast<double>(t) * lambda) * x[t - 1];
            acc /= std::sqrt(static_cast<double>(T));
            CHECK(std::abs(z[k - 1] - acc) < 1e-9);
        }
    }
}

TEST_CASE("inverse_dft round trip and Parseval", "[dft]") {
    SECTION("examples") {
        const auto back = inverse_dft(compute_dft(TimeSeries{1.0, 2.0, 3.0, 4.0}));
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(back[i].real() == Approx(static_cast<double>(i + 1)).margin(1e-10));
            CHECK(std::abs(back[i].imag()) <= 1e-10);
        }
        const auto zeros = inverse_dft(DftVector(std::vector<Complex>(7)));
        for (const auto& c : zeros) CHECK(c == Complex(0.0, 0.0));
    }
    SECTION("property over T <= 1024") {
        std::mt19937_64 rng(12);
        for (std::size_t T = 1; T <= 1024; T += (T < 64 ? 1 : 37)) {
            const auto x = oracle::random_series(rng, T);
            const auto z = compute_dft(TimeSeries(x));
            const auto back = inverse_dft(z);
            double err = 0.0, ex = 0.0, ez = 0.0;
            for (std::size_t t = 0; t < T; ++t) {
                err = std::max(err, std::abs(back[t] - Complex(x[t], 0.0)));
                ex += x[t] * x[t];
                ez += std::norm(z[t]);
            }
            INFO("T = " << T);
            CHECK(err <= 1e-10);
            CHECK(std::abs(ex - ez) <= 1e-10 * ex);
        }
    }
}

TEST_CASE("has_symmetry_property", "[dft]") {
    std::mt19937_64 rng(13);
    CHECK(has_symmetry_property(compute_dft(TimeSeries(oracle::random_series(rng, 5))), 1e-10));
    CHECK(has_symmetry_property(compute_dft(TimeSeries(oracle::random_series(rng, 6))), 1e-10));
    const Complex i(0.0, 1.0);
    CHECK_FALSE(has_symmetry_property(DftVector({i, i, i}), 1e-10));

    SECTION("holds for random real series of both parities") {
        for (int rep = 0; rep < 1000; ++rep) {
            const std::size_t T = 2 + static_cast<std::size_t>(rep % 63);
            CHECK(has_symmetry_property(compute_dft(TimeSeries(oracle::random_series(rng, T))), 1e-10));
        }
    }
    SECTION("detects a broken pair for even T") {
        const auto z = compute_dft(TimeSeries(oracle::random_series(rng, 8)));
        std::vector<Complex> e(z.entries().begin(), z.entries().end());
        e[0] += Complex(0.0, 0.5);
        CHECK_FALSE(has_symmetry_property(DftVector(e), 1e-10));
    }
    SECTION("even T: the T/2 and T slots must be real") {
        std::vector<Complex> e(6, Complex(1.0, 0.0));
        CHECK(has_symmetry_property(DftVector(e), 1e-12));
        e[5] = Complex(1.0, 1e-3);
        CHECK_FALSE(has_symmetry_property(DftVector(e), 1e-12));
        e[5] = 1.0;
        e[2] = Complex(1.0, 1e-3);
        CHECK_FALSE(has_symmetry_property(DftVector(e), 1e-12));
    }
}

TEST_CASE("symmetrize", "[dft]") {
    SECTION("b = 3 hand example") {
        const auto s = symmetrize(std::vector<Complex>{{1, 2}, {4, 5}, {7, 8}});
        CHECK(s[0] == Complex(7, -8));
        CHECK(s[1] == Complex(4, 0));
        CHECK(s[2] == Complex(7, 8));
        CHECK(has_symmetry_property(s, 1e-12));
        CHECK(max_imag(inverse_dft(s)) <= 1e-10);
    }
    SECTION("b = 4 and b = 6 arbitrary input") {
        std::mt19937_64 rng(14);
        for (std::size_t b : {4u, 6u}) {
            const auto s = symmetrize(oracle::random_complex(rng, b));
            CHECK(has_symmetry_property(s, 1e-12));
            CHECK(max_imag(inverse_dft(s)) <= 1e-10);
        }
    }
    SECTION("fixed points are returned unchanged") {
        std::mt19937_64 rng(15);
        for (std::size_t T : {5u, 8u}) {
            const auto z = compute_dft(TimeSeries(oracle::random_series(rng, T)));
            const auto fixed = symmetrize(z.entries());
            CHECK(symmetrize(fixed.entries()) == fixed);
        }
    }
    SECTION("properties for b in 2..32") {
        std::mt19937_64 rng(16);
        for (int rep = 0; rep < 500; ++rep) {
            const std::size_t b = 2 + static_cast<std::size_t>(rep % 31);
            const auto s = symmetrize(oracle::random_complex(rng, b));
            INFO("b = " << b);
            CHECK(has_symmetry_property(s, 1e-12));
            CHECK(max_imag(inverse_dft(s)) <= 1e-10);
            CHECK(symmetrize(s.entries()) == s);
        }
    }
    SECTION("b = 1 keeps the real part") {
        const auto s = symmetrize(std::vector<Complex>{{3, 4}});
        CHECK(s[0] == Complex(3, 0));
    }
}
