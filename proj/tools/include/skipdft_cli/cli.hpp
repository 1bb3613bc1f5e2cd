#pragma once

#include "skipdft/experiments.hpp"
#include "skipdft/time_series.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace skipdft::cli {

enum class VarianceMode { subsampling_quantiles, normal_vhat, normal_hybrid };
enum class OutputFormat { json, csv };

[[nodiscard]] std::string to_string(VarianceMode mode);
[[nodiscard]] VarianceMode variance_mode_from_string(const std::string& s);
[[nodiscard]] std::string to_string(OutputFormat format);
[[nodiscard]] OutputFormat output_format_from_string(const std::string& s);

struct AnalysisRequest {
    std::string input;
    StatisticDescriptor statistic;
    std::optional<std::size_t> b;  ///< empty means auto: floor(T^0.4)
    double alpha = 0.05;
    VarianceMode variance_mode = VarianceMode::subsampling_quantiles;
    double eta = 3.0;           ///< normal_hybrid only
    std::size_t bandwidth = 0;  ///< normal_hybrid only; 0 selects floor(T^{1/3})
    OutputFormat format = OutputFormat::json;

    friend bool operator==(const AnalysisRequest&, const AnalysisRequest&) = default;
};

[[nodiscard]] nlohmann::json to_json(const AnalysisRequest& r);
/// Inverse of to_json; throws ConfigError.
[[nodiscard]] AnalysisRequest analysis_request_from_json(const nlohmann::json& j);

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDegenerate = 3;

/**
 * @brief One value per line; an optional single header (non-numeric first
 * line) is skipped. Blank lines, "NA", non-finite or otherwise unparsable
 * values are rejected with the line number.
 */
[[nodiscard]] TimeSeries read_series_csv(const std::string& path);

/// Full analysis report as JSON (schema_version 1).
[[nodiscard]] nlohmann::json analyze(const TimeSeries& x, const AnalysisRequest& request);

/// Long-form CSV rendering of an analysis report: name,index,value.
[[nodiscard]] std::string analysis_csv(const nlohmann::json& report);

/// `analyze` subcommand; writes the report to `out`, diagnostics to `err`.
int run_analyze(const AnalysisRequest& request, std::ostream& out, std::ostream& err);

struct SimulateOptions {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::size_t> workers;
    bool timestamp = false;
};

/// `simulate` subcommand. Exit 1 when an acceptance-tagged check fails.
int run_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);

/// True when every check with "acceptance": true passed.
[[nodiscard]] bool acceptance_checks_pass(const nlohmann::json& report);

}  // namespace skipdft::cli
