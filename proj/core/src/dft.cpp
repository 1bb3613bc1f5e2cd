#include "skipdft/dft.hpp"

#include "fft_backend.hpp"
#include "skipdft/error.hpp"

#include <cmath>
#include <numbers>

namespace skipdft {

double fourier_frequency(std::size_t T, long l) noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(T);
}

namespace {

// exp(-i lambda_l) with the angle reduced to [-pi, pi] before evaluation.
Complex unit_phase(std::size_t T, long l, double sign) {
    const auto n = static_cast<long>(T);
    long r = ((l % n) + n) % n;
    if (2 * r > n) r -= n;
    return std::polar(1.0, sign * fourier_frequency(T, r));
}

}  // namespace

DftVector compute_dft(const TimeSeries& x) {
    const std::size_t T = x.size();
    std::vector<Complex> in(T);
    for (std::size_t t = 0; t < T; ++t) in[t] = x[t];
    std::vector<Complex> natural(T);
    detail::fft_forward(in, natural);

    const double norm = 1.0 / std::sqrt(static_cast<double>(T));
    std::vector<Complex> out(T);
    for (std::size_t p = 0; p < T; ++p) {
        const long l = fourier_index(T, p + 1);
        const auto m = static_cast<std::size_t>(((l % static_cast<long>(T)) + static_cast<long>(T)) %
                                                static_cast<long>(T));
        out[p] = norm * unit_phase(T, l, -1.0) * natural[m];
    }
    return DftVector(std::move(out));
}

std::vector<Complex> inverse_dft(const DftVector& z) {
    const std::size_t T = z.size();
    if (T == 0) throw InvalidInput("inverse_dft: empty vector");
    std::vector<Complex> natural(T);
    for (std::size_t p = 0; p < T; ++p) {
        const long l = z.index_at(p);
        const auto m = static_cast<std::size_t>(((l % static_cast<long>(T)) + static_cast<long>(T)) %
                                                static_cast<long>(T));
        natural[m] = unit_phase(T, l, +1.0) * z[p];
    }
    std::vector<Complex> out(T);
    detail::fft_backward(natural, out);
    const double norm = 1.0 / std::sqrt(static_cast<double>(T));
    for (auto& v : out) v *= norm;
    return out;
}

bool has_symmetry_property(const DftVector& z, double tol) {
    const std::size_t T = z.size();
    if (T == 0) return true;
    auto mirrors = [&](std::size_t a, std::size_t b) { return std::abs(z[a] - std::conj(z[b])) <= tol; };

    if (T % 2 == 1) {
        for (std::size_t i = 0; i < T; ++i) {
            if (!mirrors(i, T - 1 - i)) return false;
        }
        return std::abs(z[T / 2].imag()) <= tol;
    }
    // 1-based: z_{T-j} = conj(z_j), j = 1..T-1; z_T real.
    for (std::size_t j = 1; j <= T - 1; ++j) {
        if (!mirrors(T - j - 1, j - 1)) return false;
    }
    return std::abs(z[T / 2 - 1].imag()) <= tol && std::abs(z[T - 1].imag()) <= tol;
}

DftVector symmetrize(std::span<const Complex> z) {
    const std::size_t b = z.size();
    if (b == 0) throw InvalidInput("symmetrize: empty vector");
    std::vector<Complex> out(z.begin(), z.end());
    if (b % 2 == 1) {
        const std::size_t half = b / 2;
        for (std::size_t i = 0; i < half; ++i) out[i] = std::conj(z[b - 1 - i]);
        out[half] = Complex(z[half].real(), 0.0);
    } else {
        // entries 1..b/2-1 <- conj of entries b-1 .. b/2+1 (1-based)
        for (std::size_t j = 1; j + 1 <= b / 2; ++j) out[j - 1] = std::conj(z[b - j - 1]);
        out[b / 2 - 1] = Complex(z[b / 2 - 1].real(), 0.0);
        out[b - 1] = Complex(z[b - 1].real(), 0.0);
    }
    return DftVector(std::move(out));
}

}  // namespace skipdft
