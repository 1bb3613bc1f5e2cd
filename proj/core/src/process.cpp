#include "skipdft/process.hpp"

#include "skipdft/error.hpp"
#include "skipdft/quadrature.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

namespace skipdft {

double Innovation::kurtosis() const {
    switch (kind) {
        case InnovationKind::gaussian: return 3.0;
        case InnovationKind::centered_exponential: return 9.0;
        case InnovationKind::student_t: return 3.0 + 6.0 / (df - 4.0);
    }
    return 3.0;
}

std::string to_string(InnovationKind kind) {
    switch (kind) {
        case InnovationKind::gaussian: return "gaussian";
        case InnovationKind::centered_exponential: return "centered_exponential";
        case InnovationKind::student_t: return "student_t";
    }
    return "gaussian";
}

InnovationKind innovation_kind_from_string(const std::string& name) {
    if (name == "gaussian") return InnovationKind::gaussian;
    if (name == "centered_exponential") return InnovationKind::centered_exponential;
    if (name == "student_t") return InnovationKind::student_t;
    throw InvalidInput("unknown innovation distribution '" + name +
                       "' (expected gaussian, centered_exponential or student_t)");
}

void LinearProcessSpec::validate() const {
    if (ma_coefficients.empty()) throw InvalidInput("LinearProcessSpec: empty MA coefficient list");
    for (double c : ma_coefficients) {
        if (!std::isfinite(c)) throw InvalidInput("LinearProcessSpec: non-finite MA coefficient");
    }
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw InvalidInput("LinearProcessSpec: sigma2 must be positive");
    if (!std::isfinite(mean)) throw InvalidInput("LinearProcessSpec: non-finite mean");
    if (innovation.kind == InnovationKind::student_t && !(innovation.df > 8.0)) {
        throw InvalidInput("LinearProcessSpec: student_t innovations need df > 8");
    }
}

LinearProcessSpec white_noise(double sigma2, Innovation innovation) {
    LinearProcessSpec spec;
    spec.innovation = innovation;
    spec.sigma2 = sigma2;
    return spec;
}

LinearProcessSpec ar1_process(double phi, double sigma2, Innovation innovation, double tail_cutoff) {
    if (!(std::abs(phi) < 1.0)) {
        std::ostringstream msg;
        msg << "ar1_process: |phi| = " << std::abs(phi) << " is not below 1";
        throw NonstationaryProcess(msg.str());
    }
    LinearProcessSpec spec;
    spec.innovation = innovation;
    spec.sigma2 = sigma2;
    spec.ma_coefficients = {1.0};
    const double a = std::abs(phi);
    if (a > 0.0) {
        // extend while the tail beyond the current order is still too large
        double power = 1.0;
        while (power * a / (1.0 - a) >= tail_cutoff) {
            power *= a;
            spec.ma_coefficients.push_back(spec.ma_coefficients.back() * phi);
        }
    }
    return spec;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    auto mix = [](std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    };
    return mix(mix(seed) ^ mix(stream + 0x632be59bd9b4e019ULL));
}

TimeSeries generate(const LinearProcessSpec& spec, std::size_t T, std::uint64_t seed) {
    spec.validate();
    if (T < 1) throw InvalidInput("generate: T must be >= 1");
    const std::size_t M = spec.order();
    const std::size_t burn_in = M + 100;
    const std::size_t n = T + burn_in;
    const double sigma = std::sqrt(spec.sigma2);

    std::mt19937_64 rng(seed);
    std::vector<double> eps(n);
    switch (spec.innovation.kind) {
        case InnovationKind::gaussian: {
            std::normal_distribution<double> d(0.0, 1.0);
            for (auto& e : eps) e = sigma * d(rng);
            break;
        }
        case InnovationKind::centered_exponential: {
            std::exponential_distribution<double> d(1.0);
            for (auto& e : eps) e = sigma * (d(rng) - 1.0);
            break;
        }
        case InnovationKind::student_t: {
            const double df = spec.innovation.df;
            std::student_t_distribution<double> d(df);
            const double unit = std::sqrt((df - 2.0) / df);
            for (auto& e : eps) e = sigma * unit * d(rng);
            break;
        }
    }

    const auto& psi = spec.ma_coefficients;
    std::vector<double> x(T);
    for (std::size_t t = 0; t < T; ++t) {
        const std::size_t s = t + burn_in;
        double acc = 0.0;
        for (std::size_t j = 0; j <= M; ++j) acc += psi[j] * eps[s - j];
        x[t] = spec.mean + acc;
    }
    return TimeSeries(std::move(x));
}

AnalyticSpectrum ar1_spectrum(double phi, double sigma2) {
    if (!(std::abs(phi) < 1.0)) {
        std::ostringstream msg;
        msg << "ar1_spectrum: |phi| = " << std::abs(phi) << " is not below 1";
        throw NonstationaryProcess(msg.str());
    }
    return {[phi, sigma2](double lambda) {
                // |1 - phi e^{-i lambda}|^2 = 1 - 2 phi cos(lambda) + phi^2
                return sigma2 / (1.0 - 2.0 * phi * std::cos(lambda) + phi * phi);
            },
            SpectrumProvenance::closed_form_ar1};
}

namespace {

double filter_power(const std::vector<double>& c, double lambda) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) acc += c[j] * std::polar(1.0, -static_cast<double>(j) * lambda);
    return std::norm(acc);
}

}  // namespace

AnalyticSpectrum ma_spectrum(std::vector<double> coefficients, double sigma2) {
    return {[c = std::move(coefficients), sigma2](double lambda) { return sigma2 * filter_power(c, lambda); },
            SpectrumProvenance::closed_form_ma};
}

AnalyticSpectrum spectrum_of(const LinearProcessSpec& spec) {
    spec.validate();
    return {[c = spec.ma_coefficients, s = spec.sigma2](double lambda) { return s * filter_power(c, lambda); },
            SpectrumProvenance::numeric_from_psi};
}

double autocovariance_from_spectrum(const AnalyticSpectrum& f, long k) {
    return spectral_average([&f, k](double lambda) { return std::cos(static_cast<double>(k) * lambda) * f(lambda); });
}

double spectral_mean_value(const SpectralFunctional& g, const AnalyticSpectrum& f) {
    return spectral_average([&](double lambda) { return (g(lambda) * f(lambda)).real(); });
}

double ratio_value(const RatioSpec& spec, const AnalyticSpectrum& f) {
    const double den = spectral_mean_value(spec.denominator, f);
    if (den == 0.0) throw DegenerateStatistic("ratio_value: <m f> = 0");
    return spectral_mean_value(spec.numerator, f) / den;
}

double asymptotic_variance_spectral_mean(const SpectralFunctional& g, const AnalyticSpectrum& f, double eta) {
    const double main = spectral_average([&](double lambda) {
        const double fl = f(lambda);
        return (g(lambda) * g.star(lambda)).real() * fl * fl;
    });
    const double mean = spectral_mean_value(g, f);
    return main + (eta - 3.0) * mean * mean;
}

double asymptotic_variance_ratio(const RatioSpec& spec, const AnalyticSpectrum& f, double theta) {
    const double mf = spectral_mean_value(spec.denominator, f);
    if (std::abs(mf) <= 1e-14) throw DegenerateStatistic("asymptotic_variance_ratio: <m f> vanishes");
    const SpectralFunctional g = SpectralFunctional::combine(1.0, spec.numerator, -theta, spec.denominator);
    const double main = spectral_average([&](double lambda) {
        const double fl = f(lambda);
        return (g(lambda) * g.star(lambda)).real() * fl * fl;
    });
    return main / (mf * mf);
}

}  // namespace skipdft
