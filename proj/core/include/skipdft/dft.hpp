#pragma once

#include "skipdft/time_series.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace skipdft {

using Complex = std::complex<double>;

/// Fourier index l of the 1-based DFT position k for length T:
/// l = [T/2] - T + k, so positions 1..T cover [T/2]-T+1 .. [T/2].
[[nodiscard]] constexpr long fourier_index(std::size_t T, std::size_t k) noexcept {
    const auto n = static_cast<long>(T);
    return n / 2 - n + static_cast<long>(k);
}

/// 1-based position of Fourier index l (taken modulo T) in a length-T vector.
[[nodiscard]] constexpr std::size_t fourier_position(std::size_t T, long l) noexcept {
    const auto n = static_cast<long>(T);
    long k = l - (n / 2 - n);  // in [1, T] when l is in range
    k = ((k - 1) % n + n) % n + 1;
    return static_cast<std::size_t>(k);
}

/// Fourier frequency 2*pi*l/T.
[[nodiscard]] double fourier_frequency(std::size_t T, long l) noexcept;

/**
 * @brief Length-T complex vector stored in centred Fourier order.
 *
 * Entry at 0-based position p corresponds to the Fourier frequency with index
 * l = [T/2] - T + p + 1, i.e. the negative frequencies come first, zero sits at
 * position T - [T/2] - 1, and the last entry is l = [T/2].
 */
class DftVector {
public:
    DftVector() = default;
    explicit DftVector(std::vector<Complex> entries) : entries_(std::move(entries)) {}

    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool odd_length() const noexcept { return entries_.size() % 2 == 1; }
    [[nodiscard]] std::span<const Complex> entries() const noexcept { return entries_; }
    [[nodiscard]] const Complex& operator[](std::size_t p) const { return entries_[p]; }

    /// Fourier index of 0-based position p.
    [[nodiscard]] long index_at(std::size_t p) const noexcept { return fourier_index(size(), p + 1); }

    /// Entry for Fourier index l, interpreted modulo T.
    [[nodiscard]] const Complex& at_index(long l) const { return entries_[fourier_position(size(), l) - 1]; }

    friend bool operator==(const DftVector&, const DftVector&) = default;

private:
    std::vector<Complex> entries_;
};

/**
 * @brief Unitary DFT, entry k = T^{-1/2} sum_{t=1}^T exp(-i t lambda_l) x_t.
 *
 * Uses FFTW internally and re-orders to the centred convention. Note the time
 * origin is t = 1, which attaches a phase exp(-i lambda_l) relative to the
 * usual 0-based FFT.
 */
[[nodiscard]] DftVector compute_dft(const TimeSeries& x);

/// Inverse of compute_dft: x_t = T^{-1/2} sum_l exp(i t lambda_l) z_l. Complex in general.
[[nodiscard]] std::vector<Complex> inverse_dft(const DftVector& z);

/**
 * @brief Conjugate-reversal structure of the DFT of a real series.
 *
 * Odd T: z reversed equals conj(z) (middle entry real).
 * Even T: z_{T-j} = conj(z_j) for 1 <= j <= T-1, and entries T/2 and T are real.
 * Comparisons use |difference| <= tol.
 */
[[nodiscard]] bool has_symmetry_property(const DftVector& z, double tol);

/**
 * @brief Force the Symmetry Property onto an arbitrary complex vector.
 *
 * The upper half is kept; the lower half is overwritten with conjugates of
 * the mirrored upper half and the self-conjugate slots lose their imaginary
 * parts. Idempotent; inverse_dft of the result is real.
 */
[[nodiscard]] DftVector symmetrize(std::span<const Complex> z);

}  // namespace skipdft
