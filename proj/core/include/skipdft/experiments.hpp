#pragma once

#include "skipdft/error.hpp"
#include "skipdft/inference.hpp"
#include "skipdft/process.hpp"
#include "skipdft/skip_sample.hpp"
#include "skipdft/spectral.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace skipdft {

/**
 * @brief Serializable name for a StatisticSpec.
 *
 * name is one of: variance, autocovariance, autocorrelation (lag k),
 * trig (spectral mean with g = sum a_k cos + sum b_k sin), trig-ratio
 * (numerator cos/sin, denominator den_cos/den_sin).
 */
struct StatisticDescriptor {
    std::string name = "variance";
    long k = 1;
    std::vector<double> cos_coefficients;
    std::vector<double> sin_coefficients;
    std::vector<double> den_cos_coefficients;
    std::vector<double> den_sin_coefficients;

    [[nodiscard]] StatisticSpec build() const;
    friend bool operator==(const StatisticDescriptor&, const StatisticDescriptor&) = default;
};

/// Serializable process: type ar1 (phi), ma (psi) or white_noise.
struct ProcessDescriptor {
    std::string type = "white_noise";
    double phi = 0.0;
    std::vector<double> psi{1.0};
    Innovation innovation;
    double sigma2 = 1.0;
    double mean = 0.0;

    [[nodiscard]] LinearProcessSpec build() const;
    /// Closed form for ar1, psi-based otherwise.
    [[nodiscard]] AnalyticSpectrum spectrum() const;
};

struct HybridSettings {
    double eta = 3.0;
    std::size_t bandwidth = 0;  ///< 0 selects default_bandwidth(T)
};

struct MonteCarloConfig {
    std::size_t replications = 500;
    std::size_t T = 4096;
    std::size_t b = 64;
    std::uint64_t seed = 1;
    StatisticDescriptor statistic;
    double alpha = 0.05;
    std::optional<HybridSettings> hybrid;
    bool record_replications = false;
    std::size_t workers = 1;  ///< execution only; never changes results
};

struct Summary {
    double mean = 0.0;
    double median = 0.0;
    double sd = 0.0;
    double mse = 0.0;  ///< about the reference value
    std::size_t count = 0;
};

/// Mean/median/sd/MSE about `reference`; mean uses pairwise summation.
[[nodiscard]] Summary summarize(std::vector<double> values, double reference);

/// Pairwise (cascade) summation; deterministic for a fixed input order.
[[nodiscard]] double pairwise_sum(std::span<const double> values);

/// Run fn(i) for i in [0, n) on `workers` threads. Rethrows the first exception.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

/// Limiting variance of the statistic for the process (eta from the innovation law).
[[nodiscard]] double reference_variance(const StatisticSpec& stat, const AnalyticSpectrum& f, double eta);

/// True parameter <g f> or <p f>/<m f>.
[[nodiscard]] double true_parameter(const StatisticSpec& stat, const AnalyticSpectrum& f);

struct VarianceConsistencyReport {
    MonteCarloConfig config;
    ProcessDescriptor process;
    SkipSamplePlan plan;
    double reference = 0.0;       ///< full limiting variance
    double reference_skip = 0.0;  ///< tri-spectrum-free part <g g* f^2> (/<m f>^2)
    Summary uncorrected;
    std::optional<Summary> corrected;
    double tolerance = 0.15;
    std::size_t degenerate_replications = 0;
    std::vector<double> per_replication;
    std::vector<double> per_replication_corrected;
    bool pass = false;
};

/**
 * @brief Mean of v_b (and of the hybrid-corrected estimate when configured)
 * over replications, compared against the quadrature reference.
 *
 * Passes when the mean of the estimate that targets the full variance
 * (corrected if hybrid is on) lies within `tolerance` relative error.
 */
[[nodiscard]] VarianceConsistencyReport run_variance_consistency(const MonteCarloConfig& config,
                                                                 const ProcessDescriptor& process,
                                                                 double tolerance = 0.15);

struct CoverageReport {
    MonteCarloConfig config;
    ProcessDescriptor process;
    SkipSamplePlan plan;
    double true_theta = 0.0;
    double reference_variance = 0.0;
    double coverage_subsampling = 0.0;
    double coverage_normal = 0.0;
    double coverage_oracle = 0.0;
    double max_decomposition_residual = 0.0;
    double median_ks_feasible = 0.0;  ///< L_{b,T} vs N(0, reference_variance)
    double median_ks_oracle = 0.0;    ///< U_{b,T} vs N(0, reference_variance)
    double median_ks_oracle_feasible = 0.0;
    std::pair<double, double> coverage_band{0.90, 0.98};
    std::size_t degenerate_replications = 0;
    nlohmann::json per_replication = nlohmann::json::array();
    bool pass = false;
};

/// Empirical coverage of the subsampling, normal and oracle intervals.
[[nodiscard]] CoverageReport run_coverage(const MonteCarloConfig& config, const ProcessDescriptor& process,
                                          double true_theta,
                                          std::pair<double, double> coverage_band = {0.90, 0.98});

struct KolmogorovRung {
    std::size_t T = 0;
    std::size_t b = 0;
    double median_ks_feasible = 0.0;
    double median_ks_oracle_feasible = 0.0;
};

struct KolmogorovLadderReport {
    MonteCarloConfig config;  ///< T and b unused; rungs carry them
    ProcessDescriptor process;
    double true_theta = 0.0;
    double reference_variance = 0.0;
    std::vector<KolmogorovRung> rungs;
    bool feasible_monotone = false;
    bool oracle_feasible_monotone = false;
    bool pass = false;
};

/// Median Kolmogorov distance of L_{b,T} to the normal limit at each (T, b).
[[nodiscard]] KolmogorovLadderReport run_kolmogorov_ladder(
    const MonteCarloConfig& config, const ProcessDescriptor& process,
    const std::vector<std::pair<std::size_t, std::size_t>>& rungs);

struct CovarianceDecayRow {
    std::size_t T = 0;
    SkipSamplePlan plan;
    double cov_12 = 0.0;
    double cov_12_se = 0.0;
    double var_mean = 0.0;  ///< average over j of Var[theta_b^(j)]
    double b_var = 0.0;
    double b_var_reference = 0.0;
    double cov_sq_roots_12 = 0.0;  ///< Cov of squared oracle roots, j = 1, 2
    double cov_sq_roots_12_se = 0.0;
    std::vector<double> group_abs_cov;  ///< |cov_12| per seed group
};

struct CovarianceDecayReport {
    ProcessDescriptor process;
    StatisticDescriptor statistic;
    std::size_t b = 0;
    std::size_t replications = 0;
    std::uint64_t seed = 0;
    std::size_t seed_groups = 1;
    std::vector<CovarianceDecayRow> rows;
    std::vector<double> b_var_ratios;  ///< row[i+1].b_var / row[i].b_var
    std::vector<double> abs_cov_ratios;
    std::size_t groups_with_decay = 0;  ///< groups whose |cov| fell from first to last T
    double bvar_band_lo = 0.8;
    double bvar_band_hi = 1.25;
    double cov_se_multiple = 4.0;
    double reference_tolerance = 0.25;
    bool bvar_ratio_ok = false;
    bool cov_small_ok = false;
    bool reference_ok = false;
    bool pass = false;
};

/**
 * @brief Empirical Cov[theta_b^(1), theta_b^(2)] and Var[theta_b^(j)] at each T.
 *
 * pass requires the b Var ratios to sit inside [bvar_band_lo, bvar_band_hi]
 * and |cov| <= cov_se_multiple * SE at the largest T, and b Var at the
 * largest T to lie within reference_tolerance of b_var_reference. With seed_groups > 1
 * the replications are split into independent groups and the number of
 * groups whose |cov| decreased from the first to the last T is reported.
 */
[[nodiscard]] CovarianceDecayReport run_covariance_decay(const ProcessDescriptor& process,
                                                         const StatisticDescriptor& statistic, std::size_t b,
                                                         const std::vector<std::size_t>& T_list,
                                                         std::size_t replications, std::uint64_t seed,
                                                         std::size_t workers = 1, std::size_t seed_groups = 1);

// JSON (reports carry "schema_version": 1)

inline constexpr int kSchemaVersion = 1;

/// Monte Carlo checks are tagged "acceptance": true from this many replications on;
/// below it they are reported as informational. Deterministic checks are always tagged.
inline constexpr std::size_t kAcceptanceReplications = 500;

/// Parse failure inside a JSON document; `pointer()` names the offending field.
class ConfigError : public InvalidInput {
public:
    ConfigError(std::string pointer, const std::string& what)
        : InvalidInput(pointer + ": " + what), pointer_(std::move(pointer)) {}
    [[nodiscard]] const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

[[nodiscard]] nlohmann::json to_json(const StatisticDescriptor& d);
[[nodiscard]] StatisticDescriptor statistic_from_json(const nlohmann::json& j, const std::string& pointer = "");
[[nodiscard]] nlohmann::json to_json(const ProcessDescriptor& d);
[[nodiscard]] ProcessDescriptor process_from_json(const nlohmann::json& j, const std::string& pointer = "");
[[nodiscard]] nlohmann::json to_json(const SkipSamplePlan& plan);
/// Config echo; excludes `workers`.
[[nodiscard]] nlohmann::json to_json(const MonteCarloConfig& c);
[[nodiscard]] nlohmann::json to_json(const Summary& s);

[[nodiscard]] nlohmann::json to_json(const VarianceConsistencyReport& r);
[[nodiscard]] nlohmann::json to_json(const CoverageReport& r);
[[nodiscard]] nlohmann::json to_json(const KolmogorovLadderReport& r);
[[nodiscard]] nlohmann::json to_json(const CovarianceDecayReport& r);

/**
 * @brief Run the experiment named by config["experiment"] and return its report.
 *
 * Recognised experiments: variance_consistency, coverage, kolmogorov_ladder,
 * covariance_decay. Throws ConfigError for malformed configs; `workers`, when
 * given, overrides the config's worker count.
 */
[[nodiscard]] nlohmann::json run_experiment(const nlohmann::json& config, std::optional<std::size_t> workers = {});

}  // namespace skipdft
