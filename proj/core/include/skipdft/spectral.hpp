#pragma once

#include "skipdft/dft.hpp"
#include "skipdft/periodogram.hpp"
#include "skipdft/skip_sample.hpp"
#include "skipdft/time_series.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace skipdft {

/**
 * @brief Weight function g on [-pi, pi], evaluated lazily.
 *
 * Provides the reflection g#(lambda) = g(-lambda) and the symmetrised
 * g*(lambda) = g(lambda) + g(-lambda) that the skip-sample statistics use.
 */
class SpectralFunctional {
public:
    using Function = std::function<Complex(double)>;

    explicit SpectralFunctional(Function g) : g_(std::move(g)) {}

    /// g(lambda) = c
    static SpectralFunctional constant(double c);
    /// g(lambda) = exp(i k lambda)
    static SpectralFunctional exponential(long k);
    /// g(lambda) = sum_k a_k cos(k lambda) + sum_{k>=1} b_k sin(k lambda).
    /// `cos_coefficients[k]` is a_k starting at k = 0; `sin_coefficients[k-1]` is b_k.
    static SpectralFunctional trigonometric(std::vector<double> cos_coefficients,
                                            std::vector<double> sin_coefficients = {});

    [[nodiscard]] Complex operator()(double lambda) const { return g_(lambda); }
    [[nodiscard]] Complex reflected(double lambda) const { return g_(-lambda); }
    [[nodiscard]] Complex star(double lambda) const { return g_(lambda) + g_(-lambda); }

    /// alpha * g + beta * h
    [[nodiscard]] static SpectralFunctional combine(double alpha, const SpectralFunctional& g, double beta,
                                                    const SpectralFunctional& h);

private:
    Function g_;
};

/// theta = <p f> / <m f>.
struct RatioSpec {
    SpectralFunctional numerator;
    SpectralFunctional denominator;
};

enum class StatisticKind { spectral_mean, ratio };

struct StatisticValue {
    double value = 0.0;
    StatisticKind kind = StatisticKind::spectral_mean;
    std::optional<SkipSamplePlan> plan;  ///< set for skip-sample statistics
    std::optional<std::size_t> j;        ///< skip index, set iff plan is
    std::optional<std::string> warning;  ///< e.g. a non-negligible imaginary part was dropped
};

/**
 * @brief A named statistic: either a spectral mean <g f> or a ratio <p f>/<m f>.
 */
struct StatisticSpec {
    std::string name;
    std::variant<SpectralFunctional, RatioSpec> form;

    [[nodiscard]] StatisticKind kind() const noexcept {
        return std::holds_alternative<SpectralFunctional>(form) ? StatisticKind::spectral_mean
                                                                : StatisticKind::ratio;
    }

    /// g = 1; estimates gamma_0.
    static StatisticSpec variance();
    /// g = cos(k lambda); estimates gamma_k.
    static StatisticSpec autocovariance(long k);
    /// p = cos(k lambda), m = 1; estimates rho_k.
    static StatisticSpec autocorrelation(long k);
    static StatisticSpec spectral_mean(std::string name, SpectralFunctional g);
    static StatisticSpec ratio(std::string name, RatioSpec spec);
};

// Full-sample estimators: Riemann sums over l in R_T = {[T/2]-T+1, ..., [T/2]}.

/// T^{-1} sum_{l in R_T} g(lambda_l) I_T(lambda_l). Requires T >= 2.
[[nodiscard]] StatisticValue spectral_mean_full(const TimeSeries& x, const SpectralFunctional& g);
[[nodiscard]] StatisticValue spectral_mean_full(const Periodogram& I, const SpectralFunctional& g);

/// sum p I / sum m I. Throws DegenerateStatistic when the denominator vanishes.
[[nodiscard]] StatisticValue ratio_full(const TimeSeries& x, const RatioSpec& spec);
[[nodiscard]] StatisticValue ratio_full(const Periodogram& I, const RatioSpec& spec);

// Skip-sample estimators. With T = plan.effective_T:
//   theta_b^(j) = b^{-1} sum_{l=1}^{[b/2]} g*(2 pi l / b) I_T(2 pi (l q + j) / T).
// The TimeSeries overloads truncate x to its first effective_T observations;
// the Periodogram overloads expect the periodogram of that truncated series.

[[nodiscard]] StatisticValue spectral_mean_skip(const TimeSeries& x, const SpectralFunctional& g,
                                                const SkipSamplePlan& plan, std::size_t j);
[[nodiscard]] StatisticValue spectral_mean_skip(const Periodogram& I, const SpectralFunctional& g,
                                                const SkipSamplePlan& plan, std::size_t j);

[[nodiscard]] StatisticValue ratio_skip(const TimeSeries& x, const RatioSpec& spec, const SkipSamplePlan& plan,
                                        std::size_t j);
[[nodiscard]] StatisticValue ratio_skip(const Periodogram& I, const RatioSpec& spec, const SkipSamplePlan& plan,
                                        std::size_t j);

/// Full-sample value of a named statistic.
[[nodiscard]] StatisticValue full_statistic(const Periodogram& I, const StatisticSpec& spec);

/// All q skip-sample values, j = 1..q. The weights g*(2 pi l / b) are evaluated once.
[[nodiscard]] std::vector<StatisticValue> skip_statistics(const Periodogram& I, const StatisticSpec& spec,
                                                          const SkipSamplePlan& plan);

/// Convenience: value field of each entry.
[[nodiscard]] std::vector<double> values_of(std::span<const StatisticValue> stats);

}  // namespace skipdft
