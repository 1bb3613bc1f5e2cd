#pragma once

#include "skipdft/dft.hpp"
#include "skipdft/time_series.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace skipdft {

/**
 * @brief Periodogram at the Fourier frequencies, in the same centred order as
 * DftVector. The value at frequency zero is exactly 0.
 *
 * Lookups by Fourier index are taken modulo T, so frequencies outside
 * [-pi, pi] wrap around.
 */
class Periodogram {
public:
    Periodogram() = default;
    explicit Periodogram(std::vector<double> values) : values_(std::move(values)) {}

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t p) const { return values_[p]; }
    [[nodiscard]] double at_index(long l) const { return values_[fourier_position(size(), l) - 1]; }

private:
    std::vector<double> values_;
};

/// I_T(lambda_l) = |DFT entry|^2 for l != 0 and I_T(0) = 0. Requires T >= 2.
[[nodiscard]] Periodogram periodogram_at_fourier(const TimeSeries& x);

}  // namespace skipdft
