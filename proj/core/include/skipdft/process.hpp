#pragma once

#include "skipdft/spectral.hpp"
#include "skipdft/time_series.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace skipdft {

enum class InnovationKind { gaussian, centered_exponential, student_t };

struct Innovation {
    InnovationKind kind = InnovationKind::gaussian;
    double df = 0.0;  ///< degrees of freedom, student_t only (> 8)

    /// E[eps^4] / sigma^4: 3, 9, and 3 + 6/(df - 4) respectively.
    [[nodiscard]] double kurtosis() const;
};

[[nodiscard]] std::string to_string(InnovationKind kind);
[[nodiscard]] InnovationKind innovation_kind_from_string(const std::string& name);

/**
 * @brief Causal linear process X_t = mean + sum_{j=0}^{M} psi_j eps_{t-j},
 * eps i.i.d. with variance sigma2.
 */
struct LinearProcessSpec {
    std::vector<double> ma_coefficients{1.0};  ///< psi_0..psi_M
    Innovation innovation;
    double sigma2 = 1.0;
    double mean = 0.0;

    /// Throws InvalidInput describing the first violated constraint.
    void validate() const;
    [[nodiscard]] std::size_t order() const noexcept { return ma_coefficients.empty() ? 0 : ma_coefficients.size() - 1; }
};

/// i.i.d. noise with the given innovation law.
[[nodiscard]] LinearProcessSpec white_noise(double sigma2 = 1.0, Innovation innovation = {});

/**
 * @brief AR(1) as a truncated MA(infinity): psi_j = phi^j for j <= M, where M
 * is the smallest order whose tail sum |phi|^{M+1} / (1 - |phi|) is below
 * `tail_cutoff`. For phi = 0.5 this gives M = 60.
 */
[[nodiscard]] LinearProcessSpec ar1_process(double phi, double sigma2 = 1.0, Innovation innovation = {},
                                            double tail_cutoff = 1e-18);

/// Mixes a base seed and a stream index into an independent 64-bit seed.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/**
 * @brief Draw T observations. M + 100 innovations are discarded as burn-in.
 * Identical (spec, T, seed) give identical series.
 */
[[nodiscard]] TimeSeries generate(const LinearProcessSpec& spec, std::size_t T, std::uint64_t seed);

enum class SpectrumProvenance { closed_form_ar1, closed_form_ma, numeric_from_psi };

/// Spectral density in the convention f(lambda) = sum_k gamma_k exp(-i k lambda).
struct AnalyticSpectrum {
    std::function<double(double)> f;
    SpectrumProvenance provenance = SpectrumProvenance::numeric_from_psi;

    [[nodiscard]] double operator()(double lambda) const { return f(lambda); }
};

/// sigma2 / |1 - phi exp(-i lambda)|^2. Throws NonstationaryProcess for |phi| >= 1.
[[nodiscard]] AnalyticSpectrum ar1_spectrum(double phi, double sigma2);

/// sigma2 |sum_j theta_j exp(-i j lambda)|^2 for a finite MA filter.
[[nodiscard]] AnalyticSpectrum ma_spectrum(std::vector<double> coefficients, double sigma2);

/// Spectrum of a linear process computed from its psi weights.
[[nodiscard]] AnalyticSpectrum spectrum_of(const LinearProcessSpec& spec);

/// gamma_k = <exp(i k lambda) f> by quadrature.
[[nodiscard]] double autocovariance_from_spectrum(const AnalyticSpectrum& f, long k);

/// Re <g f>.
[[nodiscard]] double spectral_mean_value(const SpectralFunctional& g, const AnalyticSpectrum& f);

/// <p f> / <m f>.
[[nodiscard]] double ratio_value(const RatioSpec& spec, const AnalyticSpectrum& f);

/**
 * @brief Limiting variance of sqrt(T)(theta_T - theta) for a linear spectral mean
 * of a linear process: <g g* f^2> + (eta - 3) <g f>^2.
 */
[[nodiscard]] double asymptotic_variance_spectral_mean(const SpectralFunctional& g, const AnalyticSpectrum& f,
                                                       double eta);

/// <g g* f^2> / <m f>^2 with g = p - theta m. Throws DegenerateStatistic when <m f> = 0.
[[nodiscard]] double asymptotic_variance_ratio(const RatioSpec& spec, const AnalyticSpectrum& f, double theta);

}  // namespace skipdft
