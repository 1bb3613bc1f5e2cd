#include "skipdft/inference.hpp"

#include "skipdft/error.hpp"
#include "skipdft/periodogram.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace skipdft {

double RootScaling::rate(double n) const {
    const double L = slowly_varying ? slowly_varying(n) : 1.0;
    return std::pow(n, delta) * L;
}

EmpiricalRootDistribution::EmpiricalRootDistribution(std::vector<double> roots, double center, RootScaling scaling,
                                                     SkipSamplePlan plan)
    : roots_(std::move(roots)), sorted_(roots_), center_(center), scaling_(std::move(scaling)), plan_(plan) {
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalRootDistribution::cdf(double x) const {
    const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
    return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

double EmpiricalRootDistribution::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
        std::ostringstream msg;
        msg << "quantile: probability " << p << " outside (0, 1)";
        throw InvalidInput(msg.str());
    }
    // smallest k (1-based order statistic) with k/q >= p, evaluated the same
    // way cdf() computes its ratio
    const std::size_t q = sorted_.size();
    const auto qd = static_cast<double>(q);
    auto k = static_cast<std::size_t>(std::ceil(p * qd));
    k = std::clamp<std::size_t>(k, 1, q);
    while (k > 1 && static_cast<double>(k - 1) / qd >= p) --k;
    while (k < q && static_cast<double>(k) / qd < p) ++k;
    return sorted_[k - 1];
}

EmpiricalRootDistribution build_roots(std::span<const double> skip_values, double center,
                                      const RootScaling& scaling, const SkipSamplePlan& plan) {
    if (skip_values.size() < 2) {
        throw InsufficientSubsamples("build_roots: need at least 2 skip-sample statistics, got " +
                                     std::to_string(skip_values.size()));
    }
    const double a_b = scaling.rate(static_cast<double>(plan.b));
    std::vector<double> roots;
    roots.reserve(skip_values.size());
    for (double v : skip_values) roots.push_back(a_b * (v - center));
    return EmpiricalRootDistribution(std::move(roots), center, scaling, plan);
}

namespace {

void check_same_plan(std::span<const StatisticValue> stats, const SkipSamplePlan& plan, const char* who) {
    for (const auto& s : stats) {
        if (s.plan && *s.plan != plan) throw InvalidInput(std::string(who) + ": statistics come from different plans");
    }
}

void check_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream msg;
        msg << who << ": alpha = " << alpha << " outside (0, 1)";
        throw InvalidInput(msg.str());
    }
}

}  // namespace

EmpiricalRootDistribution build_roots(std::span<const StatisticValue> stats, double center,
                                      const RootScaling& scaling, const SkipSamplePlan& plan) {
    check_same_plan(stats, plan, "build_roots");
    const auto values = values_of(stats);
    return build_roots(std::span<const double>(values), center, scaling, plan);
}

Interval subsampling_ci(double theta_hat, const EmpiricalRootDistribution& d, double alpha,
                        const RootScaling& scaling, std::size_t T_effective) {
    check_alpha(alpha, "subsampling_ci");
    const double a_T = scaling.rate(static_cast<double>(T_effective));
    const double upper_root = d.quantile(1.0 - alpha / 2.0);
    const double lower_root = d.quantile(alpha / 2.0);
    return {theta_hat - upper_root / a_T, theta_hat - lower_root / a_T};
}

VarianceEstimate variance_estimator(std::span<const double> skip_values, const RootScaling& scaling,
                                    const SkipSamplePlan& plan) {
    const std::size_t q = skip_values.size();
    if (q < 2) {
        throw InsufficientSubsamples("variance_estimator: need at least 2 skip-sample statistics, got " +
                                     std::to_string(q));
    }
    double mean = 0.0;
    for (double v : skip_values) mean += v;
    mean /= static_cast<double>(q);
    double ss = 0.0;
    for (double v : skip_values) ss += (v - mean) * (v - mean);
    const double a_b = scaling.rate(static_cast<double>(plan.b));
    VarianceEstimate out;
    out.v_hat = a_b * a_b * ss / static_cast<double>(q);
    out.q = q;
    out.scaling = scaling;
    return out;
}

VarianceEstimate variance_estimator(std::span<const StatisticValue> stats, const RootScaling& scaling,
                                    const SkipSamplePlan& plan) {
    check_same_plan(stats, plan, "variance_estimator");
    const auto values = values_of(stats);
    return variance_estimator(std::span<const double>(values), scaling, plan);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        std::ostringstream msg;
        msg << "normal_quantile: probability " << p << " outside (0, 1)";
        throw InvalidInput(msg.str());
    }
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

Interval normal_ci(double theta_hat, const VarianceEstimate& v, double alpha, std::size_t T_effective,
                   const RootScaling& scaling) {
    check_alpha(alpha, "normal_ci");
    if (v.v_hat < 0.0) throw InvalidInput("normal_ci: negative variance estimate");
    const double half = normal_quantile(1.0 - alpha / 2.0) * std::sqrt(v.v_hat) /
                        scaling.rate(static_cast<double>(T_effective));
    return {theta_hat - half, theta_hat + half};
}

VarianceEstimate hybrid_variance(const VarianceEstimate& v, double eta, double g_fhat_mean) {
    if (!(eta >= 1.0)) {
        std::ostringstream msg;
        msg << "hybrid_variance: kurtosis eta = " << eta << " must be >= 1";
        throw InvalidInput(msg.str());
    }
    VarianceEstimate out = v;
    out.corrected = true;
    const double corrected = v.v_hat + (eta - 3.0) * g_fhat_mean * g_fhat_mean;
    if (corrected < 0.0) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "hybrid variance " << corrected << " clipped to 0";
        out.warning = msg.str();
        out.v_hat = 0.0;
    } else {
        out.v_hat = corrected;
    }
    return out;
}

std::size_t default_bandwidth(std::size_t T) {
    const auto m = static_cast<std::size_t>(std::floor(std::cbrt(static_cast<double>(T)) + 1e-9));
    return std::max<std::size_t>(m, 1);
}

double plug_in_spectral_mean_fhat(const TimeSeries& x, const SpectralFunctional& g, std::size_t bandwidth) {
    const std::size_t T = x.size();
    if (bandwidth < 1 || bandwidth >= T) {
        throw InvalidInput("plug_in_spectral_mean_fhat: bandwidth " + std::to_string(bandwidth) + " outside [1, " +
                           std::to_string(T) + ")");
    }
    std::vector<double> weighted(bandwidth + 1);
    for (std::size_t k = 0; k <= bandwidth; ++k) {
        const double w = 1.0 - static_cast<double>(k) / static_cast<double>(bandwidth + 1);
        weighted[k] = w * sample_autocovariance(x, static_cast<long>(k));
    }
    Complex acc(0.0, 0.0);
    for (std::size_t p = 0; p < T; ++p) {
        const double lambda = fourier_frequency(T, fourier_index(T, p + 1));
        double fhat = weighted[0];
        for (std::size_t k = 1; k <= bandwidth; ++k) fhat += 2.0 * weighted[k] * std::cos(static_cast<double>(k) * lambda);
        acc += g(lambda) * fhat;
    }
    return acc.real() / static_cast<double>(T);
}

double kolmogorov_distance(const EmpiricalRootDistribution& d, const std::function<double(double)>& F) {
    const auto r = d.sorted_roots();
    const auto q = static_cast<double>(r.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double Fi = F(r[i]);
        worst = std::max({worst, static_cast<double>(i + 1) / q - Fi, Fi - static_cast<double>(i) / q});
    }
    return worst;
}

double kolmogorov_distance(const EmpiricalRootDistribution& a, const EmpiricalRootDistribution& b) {
    // both cdfs are step functions; the sup is attained at one of the jump points
    double worst = 0.0;
    for (double x : a.sorted_roots()) worst = std::max(worst, std::abs(a.cdf(x) - b.cdf(x)));
    for (double x : b.sorted_roots()) worst = std::max(worst, std::abs(a.cdf(x) - b.cdf(x)));
    return worst;
}

}  // namespace skipdft
