#include "skipdft/spectral.hpp"

#include "skipdft/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace skipdft {

SpectralFunctional SpectralFunctional::constant(double c) {
    return SpectralFunctional([c](double) { return Complex(c, 0.0); });
}

SpectralFunctional SpectralFunctional::exponential(long k) {
    return SpectralFunctional([k](double lambda) { return std::polar(1.0, static_cast<double>(k) * lambda); });
}

SpectralFunctional SpectralFunctional::trigonometric(std::vector<double> cos_coefficients,
                                                     std::vector<double> sin_coefficients) {
    return SpectralFunctional([a = std::move(cos_coefficients), b = std::move(sin_coefficients)](double lambda) {
        double sum = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * std::cos(static_cast<double>(k) * lambda);
        for (std::size_t k = 0; k < b.size(); ++k) sum += b[k] * std::sin(static_cast<double>(k + 1) * lambda);
        return Complex(sum, 0.0);
    });
}

SpectralFunctional SpectralFunctional::combine(double alpha, const SpectralFunctional& g, double beta,
                                               const SpectralFunctional& h) {
    return SpectralFunctional([alpha, beta, g, h](double lambda) { return alpha * g(lambda) + beta * h(lambda); });
}

StatisticSpec StatisticSpec::variance() {
    return {"variance", SpectralFunctional::constant(1.0)};
}

StatisticSpec StatisticSpec::autocovariance(long k) {
    std::vector<double> a(static_cast<std::size_t>(std::labs(k)) + 1, 0.0);
    a.back() = 1.0;
    return {"autocovariance(" + std::to_string(k) + ")", SpectralFunctional::trigonometric(std::move(a))};
}

StatisticSpec StatisticSpec::autocorrelation(long k) {
    std::vector<double> a(static_cast<std::size_t>(std::labs(k)) + 1, 0.0);
    a.back() = 1.0;
    return {"autocorrelation(" + std::to_string(k) + ")",
            RatioSpec{SpectralFunctional::trigonometric(std::move(a)), SpectralFunctional::constant(1.0)}};
}

StatisticSpec StatisticSpec::spectral_mean(std::string name, SpectralFunctional g) {
    return {std::move(name), std::move(g)};
}

StatisticSpec StatisticSpec::ratio(std::string name, RatioSpec spec) {
    return {std::move(name), std::move(spec)};
}

namespace {

constexpr double kImagWarnRatio = 1e-8;
constexpr double kDegenerateRatio = 1e-12;

StatisticValue real_valued(Complex sum, StatisticKind kind) {
    StatisticValue out;
    out.value = sum.real();
    out.kind = kind;
    if (std::abs(sum.imag()) > kImagWarnRatio * std::abs(sum.real())) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "discarded imaginary part " << sum.imag() << " of spectral sum with real part " << sum.real();
        out.warning = msg.str();
    }
    return out;
}

struct RatioSums {
    Complex numerator;
    Complex denominator;
    double denominator_scale = 0.0;  // sum |m| I
};

double checked_ratio(const RatioSums& s) {
    const double num = s.numerator.real();
    const double den = s.denominator.real();
    const double scale = std::max(std::abs(num), s.denominator_scale);
    if (!(std::abs(den) > kDegenerateRatio * scale)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "ratio statistic undefined: denominator " << den << " vanishes relative to scale " << scale;
        throw DegenerateStatistic(msg.str());
    }
    return num / den;
}

void check_skip_args(const Periodogram& I, const SkipSamplePlan& plan, std::size_t j) {
    if (I.size() != plan.effective_T) {
        throw InvalidInput("skip statistic: periodogram length " + std::to_string(I.size()) +
                           " does not match effective_T = " + std::to_string(plan.effective_T));
    }
    if (j < 1 || j > plan.q) {
        throw InvalidInput("skip statistic: j = " + std::to_string(j) + " outside [1, " + std::to_string(plan.q) +
                           "]");
    }
}

Periodogram truncated_periodogram(const TimeSeries& x, const SkipSamplePlan& plan) {
    if (x.size() != plan.T) {
        throw InvalidInput("skip statistic: series length " + std::to_string(x.size()) +
                           " does not match plan.T = " + std::to_string(plan.T));
    }
    return periodogram_at_fourier(plan.effective_T == x.size() ? x : x.head(plan.effective_T));
}

// g*(2 pi l / b) for l = 1..[b/2].
std::vector<Complex> star_weights(const SpectralFunctional& g, std::size_t b) {
    std::vector<Complex> w(b / 2);
    for (std::size_t l = 1; l <= b / 2; ++l) {
        w[l - 1] = g.star(2.0 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(b));
    }
    return w;
}

// sum_{l=1}^{[b/2]} w_l I(lambda_{l q + j}), no 1/b factor.
Complex skip_sum(const Periodogram& I, std::span<const Complex> w, const SkipSamplePlan& plan, std::size_t j,
                 double* abs_sum = nullptr) {
    Complex acc(0.0, 0.0);
    double abs_acc = 0.0;
    for (std::size_t l = 1; l <= w.size(); ++l) {
        const double Il = I.at_index(static_cast<long>(l * plan.q + j));
        acc += w[l - 1] * Il;
        abs_acc += std::abs(w[l - 1]) * Il;
    }
    if (abs_sum) *abs_sum = abs_acc;
    return acc;
}

StatisticValue tag(StatisticValue v, const SkipSamplePlan& plan, std::size_t j) {
    v.plan = plan;
    v.j = j;
    return v;
}

RatioSums full_ratio_sums(const Periodogram& I, const RatioSpec& spec) {
    const std::size_t T = I.size();
    RatioSums s;
    for (std::size_t p = 0; p < T; ++p) {
        if (I[p] == 0.0) continue;
        const double lambda = fourier_frequency(T, fourier_index(T, p + 1));
        const Complex m = spec.denominator(lambda);
        s.numerator += spec.numerator(lambda) * I[p];
        s.denominator += m * I[p];
        s.denominator_scale += std::abs(m) * I[p];
    }
    return s;
}

}  // namespace

StatisticValue spectral_mean_full(const Periodogram& I, const SpectralFunctional& g) {
    const std::size_t T = I.size();
    if (T < 2) throw InvalidInput("spectral_mean_full: need T >= 2");
    Complex acc(0.0, 0.0);
    for (std::size_t p = 0; p < T; ++p) {
        if (I[p] == 0.0) continue;  // includes l = 0
        acc += g(fourier_frequency(T, fourier_index(T, p + 1))) * I[p];
    }
    return real_valued(acc / static_cast<double>(T), StatisticKind::spectral_mean);
}

StatisticValue spectral_mean_full(const TimeSeries& x, const SpectralFunctional& g) {
    return spectral_mean_full(periodogram_at_fourier(x), g);
}

StatisticValue ratio_full(const Periodogram& I, const RatioSpec& spec) {
    StatisticValue out;
    out.kind = StatisticKind::ratio;
    out.value = checked_ratio(full_ratio_sums(I, spec));
    return out;
}

StatisticValue ratio_full(const TimeSeries& x, const RatioSpec& spec) {
    return ratio_full(periodogram_at_fourier(x), spec);
}

StatisticValue spectral_mean_skip(const Periodogram& I, const SpectralFunctional& g, const SkipSamplePlan& plan,
                                  std::size_t j) {
    check_skip_args(I, plan, j);
    const auto w = star_weights(g, plan.b);
    return tag(real_valued(skip_sum(I, w, plan, j) / static_cast<double>(plan.b), StatisticKind::spectral_mean),
               plan, j);
}

StatisticValue spectral_mean_skip(const TimeSeries& x, const SpectralFunctional& g, const SkipSamplePlan& plan,
                                  std::size_t j) {
    return spectral_mean_skip(truncated_periodogram(x, plan), g, plan, j);
}

StatisticValue ratio_skip(const Periodogram& I, const RatioSpec& spec, const SkipSamplePlan& plan, std::size_t j) {
    check_skip_args(I, plan, j);
    const auto wp = star_weights(spec.numerator, plan.b);
    const auto wm = star_weights(spec.denominator, plan.b);
    RatioSums s;
    s.numerator = skip_sum(I, wp, plan, j);
    s.denominator = skip_sum(I, wm, plan, j, &s.denominator_scale);
    StatisticValue out;
    out.kind = StatisticKind::ratio;
    out.value = checked_ratio(s);
    return tag(std::move(out), plan, j);
}

StatisticValue ratio_skip(const TimeSeries& x, const RatioSpec& spec, const SkipSamplePlan& plan, std::size_t j) {
    return ratio_skip(truncated_periodogram(x, plan), spec, plan, j);
}

StatisticValue full_statistic(const Periodogram& I, const StatisticSpec& spec) {
    if (const auto* g = std::get_if<SpectralFunctional>(&spec.form)) return spectral_mean_full(I, *g);
    return ratio_full(I, std::get<RatioSpec>(spec.form));
}

std::vector<StatisticValue> skip_statistics(const Periodogram& I, const StatisticSpec& spec,
                                            const SkipSamplePlan& plan) {
    check_skip_args(I, plan, 1);
    std::vector<StatisticValue> out;
    out.reserve(plan.q);
    if (const auto* g = std::get_if<SpectralFunctional>(&spec.form)) {
        const auto w = star_weights(*g, plan.b);
        for (std::size_t j = 1; j <= plan.q; ++j) {
            out.push_back(tag(
                real_valued(skip_sum(I, w, plan, j) / static_cast<double>(plan.b), StatisticKind::spectral_mean),
                plan, j));
        }
        return out;
    }
    const auto& r = std::get<RatioSpec>(spec.form);
    const auto wp = star_weights(r.numerator, plan.b);
    const auto wm = star_weights(r.denominator, plan.b);
    for (std::size_t j = 1; j <= plan.q; ++j) {
        RatioSums s;
        s.numerator = skip_sum(I, wp, plan, j);
        s.denominator = skip_sum(I, wm, plan, j, &s.denominator_scale);
        StatisticValue v;
        v.kind = StatisticKind::ratio;
        v.value = checked_ratio(s);
        out.push_back(tag(std::move(v), plan, j));
    }
    return out;
}

std::vector<double> values_of(std::span<const StatisticValue> stats) {
    std::vector<double> out;
    out.reserve(stats.size());
    for (const auto& s : stats) out.push_back(s.value);
    return out;
}

}  // namespace skipdft
