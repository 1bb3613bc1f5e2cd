#pragma once

#include "skipdft/skip_sample.hpp"
#include "skipdft/spectral.hpp"
#include "skipdft/time_series.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace skipdft {

/**
 * @brief Convergence rate a_n = n^delta * L(n).
 *
 * The default (delta = 1/2, L = 1) is the sqrt(n) rate of spectral means and
 * ratio statistics.
 */
struct RootScaling {
    double delta = 0.5;
    std::function<double(double)> slowly_varying;  ///< empty means L = 1

    [[nodiscard]] double rate(double n) const;
};

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

/**
 * @brief Empirical distribution of the q skip-sample roots a_b (theta_b^(j) - center).
 *
 * With center = full-sample estimate this is the feasible distribution; with
 * the true parameter it is the oracle version.
 */
class EmpiricalRootDistribution {
public:
    [[nodiscard]] std::span<const double> roots() const noexcept { return roots_; }
    [[nodiscard]] std::span<const double> sorted_roots() const noexcept { return sorted_; }
    [[nodiscard]] double center() const noexcept { return center_; }
    [[nodiscard]] const RootScaling& scaling() const noexcept { return scaling_; }
    [[nodiscard]] const SkipSamplePlan& plan() const noexcept { return plan_; }
    [[nodiscard]] std::size_t size() const noexcept { return roots_.size(); }

    /// q^{-1} #{roots <= x}
    [[nodiscard]] double cdf(double x) const;

    /// Smallest root r with cdf(r) >= p; requires 0 < p < 1.
    [[nodiscard]] double quantile(double p) const;

private:
    friend EmpiricalRootDistribution build_roots(std::span<const double>, double, const RootScaling&,
                                                 const SkipSamplePlan&);
    EmpiricalRootDistribution(std::vector<double> roots, double center, RootScaling scaling, SkipSamplePlan plan);

    std::vector<double> roots_;
    std::vector<double> sorted_;
    double center_;
    RootScaling scaling_;
    SkipSamplePlan plan_;
};

/// roots_j = a_b (theta_j - center), a_b = scaling.rate(plan.b). Requires q >= 2.
[[nodiscard]] EmpiricalRootDistribution build_roots(std::span<const double> skip_values, double center,
                                                    const RootScaling& scaling, const SkipSamplePlan& plan);
[[nodiscard]] EmpiricalRootDistribution build_roots(std::span<const StatisticValue> stats, double center,
                                                    const RootScaling& scaling, const SkipSamplePlan& plan);

/// Equal-tailed interval [theta - c_{1-alpha/2}/a_T, theta - c_{alpha/2}/a_T].
[[nodiscard]] Interval subsampling_ci(double theta_hat, const EmpiricalRootDistribution& d, double alpha,
                                      const RootScaling& scaling, std::size_t T_effective);

struct VarianceEstimate {
    double v_hat = 0.0;
    std::size_t q = 0;
    RootScaling scaling;
    bool corrected = false;
    std::optional<std::string> warning;
};

/// v_b = (a_b^2 / q) sum_j (theta_j - mean)^2. Requires q >= 2.
[[nodiscard]] VarianceEstimate variance_estimator(std::span<const double> skip_values, const RootScaling& scaling,
                                                  const SkipSamplePlan& plan);
[[nodiscard]] VarianceEstimate variance_estimator(std::span<const StatisticValue> stats,
                                                  const RootScaling& scaling, const SkipSamplePlan& plan);

/// Standard normal quantile.
[[nodiscard]] double normal_quantile(double p);

/// theta +/- z_{1-alpha/2} sqrt(v_hat) / a_T
[[nodiscard]] Interval normal_ci(double theta_hat, const VarianceEstimate& v, double alpha, std::size_t T_effective,
                                 const RootScaling& scaling);

/// v_hat + (eta - 3) <g fhat>^2, clipped at zero (with a warning). Requires eta >= 1.
[[nodiscard]] VarianceEstimate hybrid_variance(const VarianceEstimate& v, double eta, double g_fhat_mean);

/// floor(T^{1/3}), at least 1.
[[nodiscard]] std::size_t default_bandwidth(std::size_t T);

/**
 * @brief <g fhat> with fhat the Bartlett lag-window estimator
 * fhat(lambda) = sum_{|k| <= M} (1 - |k|/(M+1)) gammahat_k exp(-i k lambda),
 * integrated by the Riemann sum over R_T. Requires 1 <= bandwidth < T.
 */
[[nodiscard]] double plug_in_spectral_mean_fhat(const TimeSeries& x, const SpectralFunctional& g,
                                                std::size_t bandwidth);

/// sup_x |F_d(x) - F(x)| for a continuous reference cdf F.
[[nodiscard]] double kolmogorov_distance(const EmpiricalRootDistribution& d, const std::function<double(double)>& F);

/// sup_x |F_a(x) - F_b(x)| between two empirical distributions.
[[nodiscard]] double kolmogorov_distance(const EmpiricalRootDistribution& a, const EmpiricalRootDistribution& b);

}  // namespace skipdft
