#include "skipdft_cli/cli.hpp"

#include "skipdft/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    using namespace skipdft::cli;

    CLI::App app{"Skip-sampling inference for spectral means and ratio statistics"};
    app.require_subcommand(1);

    AnalysisRequest request;
    std::string statistic = "variance";
    long lag = 1;
    std::string b = "auto";
    std::string mode = "subsampling-quantiles";
    std::string format = "json";
    auto* analyze = app.add_subcommand("analyze", "Analyse a univariate series read from CSV");
    analyze->add_option("--input", request.input, "CSV file, one value per line")->required();
    analyze->add_option("--statistic", statistic, "variance | autocovariance | autocorrelation | trig")
        ->check(CLI::IsMember({"variance", "autocovariance", "autocorrelation", "trig"}));
    analyze->add_option("--k", lag, "lag for autocovariance/autocorrelation")->check(CLI::NonNegativeNumber);
    analyze->add_option("--cos", request.statistic.cos_coefficients, "trig: a_0, a_1, ... for cos(k lambda)")
        ->delimiter(',');
    analyze->add_option("--sin", request.statistic.sin_coefficients, "trig: b_1, b_2, ... for sin(k lambda)")
        ->delimiter(',');
    analyze->add_option("--b", b, "block length, or auto for floor(T^0.4)");
    analyze->add_option("--alpha", request.alpha, "1 - confidence level")->check(CLI::Range(0.0, 1.0));
    analyze->add_option("--variance-mode", mode, "subsampling-quantiles | normal-vhat | normal-hybrid")
        ->check(CLI::IsMember({"subsampling-quantiles", "normal-vhat", "normal-hybrid"}));
    analyze->add_option("--eta", request.eta, "innovation kurtosis for normal-hybrid");
    analyze->add_option("--bandwidth", request.bandwidth, "Bartlett bandwidth for normal-hybrid (0 = floor(T^(1/3)))");
    analyze->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo experiment from a JSON config");
    simulate->add_option("--config", sim.config, "experiment config (JSON)")->required();
    simulate->add_option("--out", sim.out, "report path (default: standard output)");
    simulate->add_option("--workers", sim.workers, "worker threads; results do not depend on it")
        ->check(CLI::PositiveNumber);
    simulate->add_flag("--timestamp", sim.timestamp, "add a generated_at field to the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*simulate) return run_simulate(sim, std::cout, std::cerr);

    try {
        request.statistic.name = statistic;
        request.statistic.k = lag;
        if (b != "auto") {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(b, &used);
            if (used != b.size() || b.front() == '-') throw std::invalid_argument(b);
            request.b = static_cast<std::size_t>(v);
        }
        request.variance_mode = variance_mode_from_string(mode);
        request.format = output_format_from_string(format);
    } catch (const std::exception&) {
        std::cerr << "error [parse]: --b expects a positive integer or auto, got '" << b << "'\n";
        return kExitUsage;
    }
    return run_analyze(request, std::cout, std::cerr);
}
