#pragma once

// Independent reference implementations used only by the tests. Everything
// here is a direct O(T^2) evaluation of a defining formula.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Centred Fourier index of 1-based position k.
inline long index_of(std::size_t T, std::size_t k) {
    const auto n = static_cast<long>(T);
    return n / 2 - n + static_cast<long>(k);
}

// z_k = T^{-1/2} sum_{t=1}^T exp(-i t lambda) x_t, lambda = 2 pi l / T.
inline std::vector<cplx> dft(const std::vector<double>& x) {
    const std::size_t T = x.size();
    std::vector<cplx> z(T);
    for (std::size_t k = 1; k <= T; ++k) {
        const double lambda = two_pi * static_cast<double>(index_of(T, k)) / static_cast<double>(T);
        cplx acc = 0.0;
        for (std::size_t t = 1; t <= T; ++t) acc += std::polar(1.0, -static_cast<double>(t) * lambda) * x[t - 1];
        z[k - 1] = acc / std::sqrt(static_cast<double>(T));
    }
    return z;
}

inline double mean(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

inline double autocov(const std::vector<double>& x, long k) {
    const std::size_t T = x.size();
    const double m = mean(x);
    const auto a = static_cast<std::size_t>(std::labs(k));
    double s = 0.0;
    for (std::size_t t = 0; t + a < T; ++t) s += (x[t] - m) * (x[t + a] - m);
    return s / static_cast<double>(T);
}

// T^{-1} |sum_t (x_t - mean) exp(-i t lambda)|^2 at any frequency.
inline double periodogram_at(const std::vector<double>& x, double lambda) {
    const double m = mean(x);
    cplx acc = 0.0;
    for (std::size_t t = 1; t <= x.size(); ++t) {
        acc += std::polar(1.0, -static_cast<double>(t) * lambda) * (x[t - 1] - m);
    }
    return std::norm(acc) / static_cast<double>(x.size());
}

// Second defining formula: sum_{|k|<T} gamma_k exp(-i k lambda).
inline double periodogram_from_autocov(const std::vector<double>& x, double lambda) {
    const auto T = static_cast<long>(x.size());
    double s = autocov(x, 0);
    for (long k = 1; k < T; ++k) s += 2.0 * autocov(x, k) * std::cos(static_cast<double>(k) * lambda);
    return s;
}

// T^{-1} sum over the centred grid of g(lambda) I(lambda), I(0) = 0, real part.
inline double spectral_mean(const std::vector<double>& x, const std::function<cplx(double)>& g) {
    const std::size_t T = x.size();
    cplx acc = 0.0;
    for (std::size_t k = 1; k <= T; ++k) {
        const long l = index_of(T, k);
        if (l == 0) continue;
        const double lambda = two_pi * static_cast<double>(l) / static_cast<double>(T);
        acc += g(lambda) * periodogram_at(x, lambda);
    }
    return acc.real() / static_cast<double>(T);
}

// b^{-1} sum_{l=1}^{[b/2]} g*(2 pi l / b) I(2 pi l / b + 2 pi j / T), with T = x.size().
inline double skip_mean(const std::vector<double>& x, const std::function<cplx(double)>& g, std::size_t b,
                        std::size_t j) {
    const auto T = static_cast<double>(x.size());
    cplx acc = 0.0;
    for (std::size_t l = 1; l <= b / 2; ++l) {
        const double w = two_pi * static_cast<double>(l) / static_cast<double>(b);
        acc += (g(w) + g(-w)) * periodogram_at(x, w + two_pi * static_cast<double>(j) / T);
    }
    return acc.real() / static_cast<double>(b);
}

inline std::vector<double> random_series(std::mt19937_64& rng, std::size_t T) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> x(T);
    for (auto& v : x) v = n(rng);
    return x;
}

inline std::vector<cplx> random_complex(std::mt19937_64& rng, std::size_t T) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<cplx> z(T);
    for (auto& v : z) v = {n(rng), n(rng)};
    return z;
}

}  // namespace oracle
