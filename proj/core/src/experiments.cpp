#include "skipdft/experiments.hpp"

#include "skipdft/error.hpp"
#include "skipdft/periodogram.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace skipdft {

// ---------------------------------------------------------------------------
// descriptors

StatisticSpec StatisticDescriptor::build() const {
    if (name == "variance") return StatisticSpec::variance();
    if (name == "autocovariance") return StatisticSpec::autocovariance(k);
    if (name == "autocorrelation") return StatisticSpec::autocorrelation(k);
    if (name == "trig") {
        if (cos_coefficients.empty() && sin_coefficients.empty()) {
            throw InvalidInput("trig statistic needs cosine or sine coefficients");
        }
        return StatisticSpec::spectral_mean("trig",
                                            SpectralFunctional::trigonometric(cos_coefficients, sin_coefficients));
    }
    if (name == "trig-ratio") {
        if (den_cos_coefficients.empty() && den_sin_coefficients.empty()) {
            throw InvalidInput("trig-ratio statistic needs denominator coefficients");
        }
        return StatisticSpec::ratio(
            "trig-ratio", RatioSpec{SpectralFunctional::trigonometric(cos_coefficients, sin_coefficients),
                                    SpectralFunctional::trigonometric(den_cos_coefficients, den_sin_coefficients)});
    }
    throw InvalidInput("unknown statistic '" + name +
                       "' (expected variance, autocovariance, autocorrelation, trig or trig-ratio)");
}

LinearProcessSpec ProcessDescriptor::build() const {
    LinearProcessSpec spec;
    if (type == "ar1") {
        spec = ar1_process(phi, sigma2, innovation);
    } else if (type == "ma") {
        spec.ma_coefficients = psi;
        spec.innovation = innovation;
        spec.sigma2 = sigma2;
    } else if (type == "white_noise") {
        spec = white_noise(sigma2, innovation);
    } else {
        throw InvalidInput("unknown process type '" + type + "' (expected ar1, ma or white_noise)");
    }
    spec.mean = mean;
    spec.validate();
    return spec;
}

AnalyticSpectrum ProcessDescriptor::spectrum() const {
    if (type == "ar1") return ar1_spectrum(phi, sigma2);
    if (type == "ma") return ma_spectrum(psi, sigma2);
    return spectrum_of(build());
}

// ---------------------------------------------------------------------------
// aggregation helpers

double pairwise_sum(std::span<const double> values) {
    constexpr std::size_t kLeaf = 8;
    if (values.size() <= kLeaf) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

double mean_of(std::span<const double> v) {
    return v.empty() ? std::numeric_limits<double>::quiet_NaN() : pairwise_sum(v) / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Sample covariance (divisor n) and a delta-method standard error: the sd of
// the centred products over sqrt(n).
std::pair<double, double> covariance_with_se(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    const double mx = mean_of(x);
    const double my = mean_of(y);
    std::vector<double> prod(n);
    for (std::size_t i = 0; i < n; ++i) prod[i] = (x[i] - mx) * (y[i] - my);
    const double cov = mean_of(prod);
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = (prod[i] - cov) * (prod[i] - cov);
    const double sd = std::sqrt(mean_of(dev));
    return {cov, sd / std::sqrt(static_cast<double>(n))};
}

double variance_of(std::span<const double> x) {
    const double m = mean_of(x);
    std::vector<double> dev(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dev[i] = (x[i] - m) * (x[i] - m);
    return mean_of(dev);
}

}  // namespace

Summary summarize(std::vector<double> values, double reference) {
    Summary s;
    s.count = values.size();
    if (values.empty()) {
        s.mean = s.median = s.sd = s.mse = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    s.mean = mean_of(values);
    std::vector<double> sq(values.size());
    std::vector<double> err(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        sq[i] = (values[i] - s.mean) * (values[i] - s.mean);
        err[i] = (values[i] - reference) * (values[i] - reference);
    }
    s.sd = values.size() > 1 ? std::sqrt(pairwise_sum(sq) / static_cast<double>(values.size() - 1)) : 0.0;
    s.mse = mean_of(err);
    s.median = median_of(std::move(values));
    return s;
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto body = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n);
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    pool.clear();  // joins
    if (failure) std::rethrow_exception(failure);
}

double reference_variance(const StatisticSpec& stat, const AnalyticSpectrum& f, double eta) {
    if (const auto* g = std::get_if<SpectralFunctional>(&stat.form)) {
        return asymptotic_variance_spectral_mean(*g, f, eta);
    }
    const auto& r = std::get<RatioSpec>(stat.form);
    return asymptotic_variance_ratio(r, f, ratio_value(r, f));
}

double true_parameter(const StatisticSpec& stat, const AnalyticSpectrum& f) {
    if (const auto* g = std::get_if<SpectralFunctional>(&stat.form)) return spectral_mean_value(*g, f);
    return ratio_value(std::get<RatioSpec>(stat.form), f);
}

// ---------------------------------------------------------------------------
// per-replication work

namespace {

struct SkipRun {
    TimeSeries series;  // truncated to effective_T
    double theta_hat = 0.0;
    std::vector<double> skip;
};

SkipRun skip_run(const LinearProcessSpec& spec, const StatisticSpec& stat, const SkipSamplePlan& plan,
                 std::uint64_t seed) {
    TimeSeries x = generate(spec, plan.T, seed);
    if (plan.effective_T != plan.T) x = x.head(plan.effective_T);
    const Periodogram I = periodogram_at_fourier(x);
    const double theta_hat = full_statistic(I, stat).value;
    auto skip = values_of(skip_statistics(I, stat, plan));
    return {std::move(x), theta_hat, std::move(skip)};
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> finite_only(const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v) {
        if (std::isfinite(x)) out.push_back(x);
    }
    return out;
}

std::size_t hybrid_bandwidth(const HybridSettings& h, std::size_t T) {
    return h.bandwidth == 0 ? default_bandwidth(T) : h.bandwidth;
}

}  // namespace

VarianceConsistencyReport run_variance_consistency(const MonteCarloConfig& config, const ProcessDescriptor& process,
                                                   double tolerance) {
    if (config.replications < 1) throw InvalidInput("run_variance_consistency: replications must be >= 1");
    const LinearProcessSpec spec = process.build();
    const StatisticSpec stat = config.statistic.build();
    const AnalyticSpectrum f = process.spectrum();
    const double eta = spec.innovation.kurtosis();
    if (config.hybrid && stat.kind() != StatisticKind::spectral_mean) {
        throw InvalidInput("run_variance_consistency: hybrid correction applies to spectral means only");
    }
    const SkipSamplePlan plan = make_plan(config.T, config.b);
    if (plan.q < 2) throw InsufficientSubsamples("run_variance_consistency: plan yields q < 2");

    VarianceConsistencyReport report;
    report.config = config;
    report.process = process;
    report.plan = plan;
    report.tolerance = tolerance;
    report.reference = reference_variance(stat, f, eta);
    report.reference_skip = reference_variance(stat, f, 3.0);

    const RootScaling scaling;
    std::vector<double> vhat(config.replications, kNaN);
    std::vector<double> corrected(config.replications, kNaN);
    parallel_for(config.replications, config.workers, [&](std::size_t r) {
        try {
            const SkipRun run = skip_run(spec, stat, plan, derive_seed(config.seed, r));
            const VarianceEstimate v = variance_estimator(std::span<const double>(run.skip), scaling, plan);
            vhat[r] = v.v_hat;
            if (config.hybrid) {
                const auto& g = std::get<SpectralFunctional>(stat.form);
                const double gf = plug_in_spectral_mean_fhat(run.series, g,
                                                             hybrid_bandwidth(*config.hybrid, plan.effective_T));
                corrected[r] = hybrid_variance(v, config.hybrid->eta, gf).v_hat;
            }
        } catch (const DegenerateStatistic&) {
            // left as NaN and counted below
        }
    });

    const auto good = finite_only(vhat);
    report.degenerate_replications = config.replications - good.size();
    report.uncorrected = summarize(good, config.hybrid ? report.reference_skip : report.reference);
    double target_mean = report.uncorrected.mean;
    if (config.hybrid) {
        report.corrected = summarize(finite_only(corrected), report.reference);
        target_mean = report.corrected->mean;
    }
    report.pass = std::isfinite(target_mean) &&
                  std::abs(target_mean - report.reference) <= tolerance * std::abs(report.reference);
    if (config.record_replications) {
        report.per_replication = std::move(vhat);
        if (config.hybrid) report.per_replication_corrected = std::move(corrected);
    }
    return report;
}

CoverageReport run_coverage(const MonteCarloConfig& config, const ProcessDescriptor& process, double true_theta,
                            std::pair<double, double> coverage_band) {
    if (config.replications < 1) throw InvalidInput("run_coverage: replications must be >= 1");
    const LinearProcessSpec spec = process.build();
    const StatisticSpec stat = config.statistic.build();
    const AnalyticSpectrum f = process.spectrum();
    const double eta = spec.innovation.kurtosis();
    if (config.hybrid && stat.kind() != StatisticKind::spectral_mean) {
        throw InvalidInput("run_coverage: hybrid correction applies to spectral means only");
    }
    const SkipSamplePlan plan = make_plan(config.T, config.b);
    if (plan.q < 2) throw InsufficientSubsamples("run_coverage: plan yields q < 2");

    CoverageReport report;
    report.config = config;
    report.process = process;
    report.plan = plan;
    report.true_theta = true_theta;
    report.coverage_band = coverage_band;
    // Degenerate cases (e.g. a ratio with p = m) have zero limiting variance.
    report.reference_variance = reference_variance(stat, f, eta);

    struct Rep {
        bool ok = false;
        double theta_hat = 0.0;
        Interval sub, normal, oracle;
        double v_hat = 0.0;
        double residual = 0.0;
        double ks_feasible = 0.0, ks_oracle = 0.0, ks_oracle_feasible = 0.0;
    };
    std::vector<Rep> reps(config.replications);
    const RootScaling scaling;
    const double a_b = scaling.rate(static_cast<double>(plan.b));
    const double v_ref = report.reference_variance;
    const boost::math::normal_distribution<double> unit;
    auto limit_cdf = [&](double x) {
        if (v_ref <= 0.0) return x >= 0.0 ? 1.0 : 0.0;
        return boost::math::cdf(unit, x / std::sqrt(v_ref));
    };

    parallel_for(config.replications, config.workers, [&](std::size_t r) {
        Rep rep;
        try {
            const SkipRun run = skip_run(spec, stat, plan, derive_seed(config.seed, r));
            const std::span<const double> skip(run.skip);
            const auto feasible = build_roots(skip, run.theta_hat, scaling, plan);
            const auto oracle = build_roots(skip, true_theta, scaling, plan);
            rep.theta_hat = run.theta_hat;
            rep.sub = subsampling_ci(run.theta_hat, feasible, config.alpha, scaling, plan.effective_T);
            rep.oracle = subsampling_ci(run.theta_hat, oracle, config.alpha, scaling, plan.effective_T);

            VarianceEstimate v = variance_estimator(skip, scaling, plan);
            if (config.hybrid) {
                const auto& g = std::get<SpectralFunctional>(stat.form);
                v = hybrid_variance(v, config.hybrid->eta,
                                    plug_in_spectral_mean_fhat(run.series, g,
                                                               hybrid_bandwidth(*config.hybrid, plan.effective_T)));
            }
            rep.v_hat = v.v_hat;
            rep.normal = normal_ci(run.theta_hat, v, config.alpha, plan.effective_T, scaling);

            // v_b = v~_b - a_b^2 (mean - theta)^2, v~_b centred at the true theta
            const double v_plain = variance_estimator(skip, scaling, plan).v_hat;
            double oracle_ss = 0.0;
            for (double s : skip) oracle_ss += (s - true_theta) * (s - true_theta);
            const double v_tilde = a_b * a_b * oracle_ss / static_cast<double>(skip.size());
            const double bar = pairwise_sum(skip) / static_cast<double>(skip.size());
            rep.residual = std::abs(v_plain - (v_tilde - a_b * a_b * (bar - true_theta) * (bar - true_theta)));

            rep.ks_feasible = kolmogorov_distance(feasible, limit_cdf);
            rep.ks_oracle = kolmogorov_distance(oracle, limit_cdf);
            rep.ks_oracle_feasible = kolmogorov_distance(oracle, feasible);
            rep.ok = true;
        } catch (const DegenerateStatistic&) {
            rep.ok = false;
        }
        reps[r] = rep;
    });

    auto covers = [&](const Interval& ci) { return ci.lower <= true_theta && true_theta <= ci.upper; };
    std::size_t n_ok = 0, c_sub = 0, c_norm = 0, c_orc = 0;
    std::vector<double> ks_f, ks_o, ks_of;
    for (std::size_t r = 0; r < reps.size(); ++r) {
        const Rep& rep = reps[r];
        if (config.record_replications) {
            nlohmann::json row = {{"replication", r}, {"ok", rep.ok}};
            if (rep.ok) {
                row["theta_hat"] = rep.theta_hat;
                row["v_hat"] = rep.v_hat;
                row["subsampling_ci"] = {rep.sub.lower, rep.sub.upper};
                row["normal_ci"] = {rep.normal.lower, rep.normal.upper};
                row["oracle_ci"] = {rep.oracle.lower, rep.oracle.upper};
            }
            report.per_replication.push_back(std::move(row));
        }
        if (!rep.ok) continue;
        ++n_ok;
        c_sub += covers(rep.sub);
        c_norm += covers(rep.normal);
        c_orc += covers(rep.oracle);
        report.max_decomposition_residual = std::max(report.max_decomposition_residual, rep.residual);
        ks_f.push_back(rep.ks_feasible);
        ks_o.push_back(rep.ks_oracle);
        ks_of.push_back(rep.ks_oracle_feasible);
    }
    report.degenerate_replications = config.replications - n_ok;
    const auto n = static_cast<double>(n_ok);
    report.coverage_subsampling = n_ok ? static_cast<double>(c_sub) / n : kNaN;
    report.coverage_normal = n_ok ? static_cast<double>(c_norm) / n : kNaN;
    report.coverage_oracle = n_ok ? static_cast<double>(c_orc) / n : kNaN;
    report.median_ks_feasible = median_of(ks_f);
    report.median_ks_oracle = median_of(ks_o);
    report.median_ks_oracle_feasible = median_of(ks_of);
    report.pass = n_ok > 0 && report.coverage_subsampling >= coverage_band.first &&
                  report.coverage_subsampling <= coverage_band.second && report.max_decomposition_residual <= 1e-10;
    return report;
}

KolmogorovLadderReport run_kolmogorov_ladder(const MonteCarloConfig& config, const ProcessDescriptor& process,
                                             const std::vector<std::pair<std::size_t, std::size_t>>& rungs) {
    if (rungs.empty()) throw InvalidInput("run_kolmogorov_ladder: no rungs");
    if (config.replications < 1) throw InvalidInput("run_kolmogorov_ladder: replications must be >= 1");
    const LinearProcessSpec spec = process.build();
    const StatisticSpec stat = config.statistic.build();
    const AnalyticSpectrum f = process.spectrum();

    KolmogorovLadderReport report;
    report.config = config;
    report.process = process;
    report.true_theta = true_parameter(stat, f);
    report.reference_variance = reference_variance(stat, f, spec.innovation.kurtosis());
    const double v_ref = report.reference_variance;
    if (!(v_ref > 0.0)) throw InvalidInput("run_kolmogorov_ladder: limiting variance is zero");
    const boost::math::normal_distribution<double> unit;
    auto limit_cdf = [&](double x) { return boost::math::cdf(unit, x / std::sqrt(v_ref)); };
    const RootScaling scaling;

    for (std::size_t k = 0; k < rungs.size(); ++k) {
        const SkipSamplePlan plan = make_plan(rungs[k].first, rungs[k].second);
        if (plan.q < 2) throw InsufficientSubsamples("run_kolmogorov_ladder: rung yields q < 2");
        const std::uint64_t rung_seed = derive_seed(config.seed, 1000003ULL * (k + 1));
        std::vector<double> ks(config.replications, kNaN);
        std::vector<double> ks_of(config.replications, kNaN);
        parallel_for(config.replications, config.workers, [&](std::size_t r) {
            try {
                const SkipRun run = skip_run(spec, stat, plan, derive_seed(rung_seed, r));
                const auto feasible = build_roots(std::span<const double>(run.skip), run.theta_hat, scaling, plan);
                const auto oracle = build_roots(std::span<const double>(run.skip), report.true_theta, scaling, plan);
                ks[r] = kolmogorov_distance(feasible, limit_cdf);
                ks_of[r] = kolmogorov_distance(oracle, feasible);
            } catch (const DegenerateStatistic&) {
            }
        });
        report.rungs.push_back({plan.T, plan.b, median_of(finite_only(ks)), median_of(finite_only(ks_of))});
    }
    report.feasible_monotone = true;
    report.oracle_feasible_monotone = true;
    for (std::size_t k = 1; k < report.rungs.size(); ++k) {
        report.feasible_monotone &= report.rungs[k].median_ks_feasible < report.rungs[k - 1].median_ks_feasible;
        report.oracle_feasible_monotone &=
            report.rungs[k].median_ks_oracle_feasible < report.rungs[k - 1].median_ks_oracle_feasible;
    }
    report.pass = report.feasible_monotone;
    return report;
}

CovarianceDecayReport run_covariance_decay(const ProcessDescriptor& process, const StatisticDescriptor& statistic,
                                           std::size_t b, const std::vector<std::size_t>& T_list,
                                           std::size_t replications, std::uint64_t seed, std::size_t workers,
                                           std::size_t seed_groups) {
    if (T_list.empty()) throw InvalidInput("run_covariance_decay: empty T list");
    if (replications < 2) throw InvalidInput("run_covariance_decay: need at least 2 replications");
    seed_groups = std::clamp<std::size_t>(seed_groups, 1, replications / 2);
    const LinearProcessSpec spec = process.build();
    const StatisticSpec stat = statistic.build();
    const AnalyticSpectrum f = process.spectrum();
    const double eta = spec.innovation.kurtosis();
    const double theta = true_parameter(stat, f);
    const RootScaling scaling;
    const double a_b = scaling.rate(static_cast<double>(b));

    // b Var[theta_b^(j)] -> <g g* f^2> + (b/T)(eta - 3)<g f>^2 for spectral
    // means, and the tri-spectrum-free ratio variance for ratios
    const double skip_part = reference_variance(stat, f, 3.0);
    const double tri_part = stat.kind() == StatisticKind::spectral_mean ? (eta - 3.0) * theta * theta : 0.0;

    CovarianceDecayReport report;
    report.process = process;
    report.statistic = statistic;
    report.b = b;
    report.replications = replications;
    report.seed = seed;
    report.seed_groups = seed_groups;

    for (std::size_t T : T_list) {
        const SkipSamplePlan plan = make_plan(T, b);
        if (plan.q < 2) throw InsufficientSubsamples("run_covariance_decay: T = " + std::to_string(T) + " gives q < 2");
        const std::uint64_t t_seed = derive_seed(seed, T);
        std::vector<std::vector<double>> skip(replications);
        parallel_for(replications, workers, [&](std::size_t r) {
            skip[r] = skip_run(spec, stat, plan, derive_seed(t_seed, r)).skip;
        });

        CovarianceDecayRow row;
        row.T = T;
        row.plan = plan;
        std::vector<double> x1(replications), x2(replications), s1(replications), s2(replications);
        for (std::size_t r = 0; r < replications; ++r) {
            x1[r] = skip[r][0];
            x2[r] = skip[r][1];
            s1[r] = a_b * a_b * (x1[r] - theta) * (x1[r] - theta);
            s2[r] = a_b * a_b * (x2[r] - theta) * (x2[r] - theta);
        }
        std::tie(row.cov_12, row.cov_12_se) = covariance_with_se(x1, x2);
        std::tie(row.cov_sq_roots_12, row.cov_sq_roots_12_se) = covariance_with_se(s1, s2);

        std::vector<double> per_j(plan.q);
        std::vector<double> column(replications);
        for (std::size_t j = 0; j < plan.q; ++j) {
            for (std::size_t r = 0; r < replications; ++r) column[r] = skip[r][j];
            per_j[j] = variance_of(column);
        }
        row.var_mean = mean_of(per_j);
        row.b_var = static_cast<double>(b) * row.var_mean;
        row.b_var_reference = skip_part + static_cast<double>(b) / static_cast<double>(plan.effective_T) * tri_part;

        const std::size_t group_size = replications / seed_groups;
        for (std::size_t g = 0; g < seed_groups; ++g) {
            const auto first = static_cast<std::ptrdiff_t>(g * group_size);
            const auto len = g + 1 == seed_groups ? replications - g * group_size : group_size;
            const auto [c, se] = covariance_with_se(std::span<const double>(x1).subspan(first, len),
                                                    std::span<const double>(x2).subspan(first, len));
            (void)se;
            row.group_abs_cov.push_back(std::abs(c));
        }
        report.rows.push_back(std::move(row));
    }

    report.bvar_ratio_ok = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const double ratio = report.rows[i].b_var / report.rows[i - 1].b_var;
        report.b_var_ratios.push_back(ratio);
        report.abs_cov_ratios.push_back(std::abs(report.rows[i].cov_12) / std::abs(report.rows[i - 1].cov_12));
        report.bvar_ratio_ok &= ratio >= report.bvar_band_lo && ratio <= report.bvar_band_hi;
    }
    for (std::size_t g = 0; g < seed_groups; ++g) {
        if (report.rows.back().group_abs_cov[g] < report.rows.front().group_abs_cov[g]) ++report.groups_with_decay;
    }
    const auto& last = report.rows.back();
    report.cov_small_ok = std::abs(last.cov_12) <= report.cov_se_multiple * last.cov_12_se;
    report.reference_ok =
        std::abs(last.b_var - last.b_var_reference) <= report.reference_tolerance * std::abs(last.b_var_reference);
    report.pass = report.bvar_ratio_ok && report.cov_small_ok && report.reference_ok;
    return report;
}

}  // namespace skipdft
