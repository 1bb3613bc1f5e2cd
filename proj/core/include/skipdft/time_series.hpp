#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace skipdft {

/**
 * @brief Real-valued observed sample X_1..X_T.
 *
 * Immutable after construction. The constructor rejects empty input and
 * non-finite entries.
 */
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values);
    TimeSeries(std::initializer_list<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

    [[nodiscard]] double mean() const noexcept;

    /// True when every observation equals the first one.
    [[nodiscard]] bool is_constant() const noexcept;

    /// The first `n` observations (1 <= n <= size()).
    [[nodiscard]] TimeSeries head(std::size_t n) const;

    /// Same series multiplied by `c`.
    [[nodiscard]] TimeSeries scaled(double c) const;

private:
    std::vector<double> values_;
};

/// Sample autocovariance at lag k (divisor T, mean-corrected); even in k.
[[nodiscard]] double sample_autocovariance(const TimeSeries& x, long k);

}  // namespace skipdft
