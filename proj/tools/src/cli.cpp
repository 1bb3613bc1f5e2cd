#include "skipdft_cli/cli.hpp"

#include "skipdft/error.hpp"
#include "skipdft/inference.hpp"
#include "skipdft/periodogram.hpp"
#include "skipdft/skip_sample.hpp"
#include "skipdft/spectral.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace skipdft::cli {

using nlohmann::json;

std::string to_string(VarianceMode mode) {
    switch (mode) {
        case VarianceMode::subsampling_quantiles: return "subsampling-quantiles";
        case VarianceMode::normal_vhat: return "normal-vhat";
        case VarianceMode::normal_hybrid: return "normal-hybrid";
    }
    return "subsampling-quantiles";
}

VarianceMode variance_mode_from_string(const std::string& s) {
    if (s == "subsampling-quantiles") return VarianceMode::subsampling_quantiles;
    if (s == "normal-vhat") return VarianceMode::normal_vhat;
    if (s == "normal-hybrid") return VarianceMode::normal_hybrid;
    throw InvalidInput("unknown variance mode '" + s + "' (expected subsampling-quantiles, normal-vhat or normal-hybrid)");
}

std::string to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

OutputFormat output_format_from_string(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    throw InvalidInput("unknown output format '" + s + "' (expected json or csv)");
}

json to_json(const AnalysisRequest& r) {
    json j = {{"input", r.input},
              {"statistic", skipdft::to_json(r.statistic)},
              {"b", r.b ? json(*r.b) : json("auto")},
              {"alpha", r.alpha},
              {"variance_mode", to_string(r.variance_mode)},
              {"format", to_string(r.format)}};
    if (r.variance_mode == VarianceMode::normal_hybrid) {
        j["eta"] = r.eta;
        j["bandwidth"] = r.bandwidth;
    }
    return j;
}

AnalysisRequest analysis_request_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("/", "expected an object");
    AnalysisRequest r;
    auto get = [&](const char* key) -> const json* {
        const auto it = j.find(key);
        return it == j.end() ? nullptr : &*it;
    };
    auto is_count = [](const json& v) {
        return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    };
    if (const json* v = get("input")) {
        if (!v->is_string()) throw ConfigError("/input", "expected a string");
        r.input = v->get<std::string>();
    }
    if (const json* v = get("statistic")) r.statistic = statistic_from_json(*v, "/statistic");
    if (const json* v = get("b")) {
        if (v->is_string() && v->get<std::string>() == "auto") {
            r.b.reset();
        } else if (is_count(*v)) {
            r.b = v->get<std::size_t>();
        } else {
            throw ConfigError("/b", "expected an integer or \"auto\"");
        }
    }
    if (const json* v = get("alpha")) {
        if (!v->is_number()) throw ConfigError("/alpha", "expected a number");
        r.alpha = v->get<double>();
    }
    try {
        if (const json* v = get("variance_mode")) r.variance_mode = variance_mode_from_string(v->get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError("/variance_mode", e.what());
    }
    if (const json* v = get("eta")) {
        if (!v->is_number()) throw ConfigError("/eta", "expected a number");
        r.eta = v->get<double>();
    }
    if (const json* v = get("bandwidth")) {
        if (!is_count(*v)) throw ConfigError("/bandwidth", "expected a non-negative integer");
        r.bandwidth = v->get<std::size_t>();
    }
    try {
        if (const json* v = get("format")) r.format = output_format_from_string(v->get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError("/format", e.what());
    }
    return r;
}

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const char* begin = s.data();
    if (*begin == '+') ++begin;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

TimeSeries read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(trim(line));
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    // strip a UTF-8 byte order mark
    if (!lines.empty() && lines.front().rfind("\xEF\xBB\xBF", 0) == 0) lines.front() = trim(lines.front().substr(3));

    std::size_t start = 0;
    if (!lines.empty() && !parse_number(lines.front())) start = 1;  // header
    std::vector<double> values;
    values.reserve(lines.size());
    for (std::size_t i = start; i < lines.size(); ++i) {
        const auto v = parse_number(lines[i]);
        if (!v || !std::isfinite(*v)) {
            const std::string shown = lines[i].empty() ? "<blank>" : lines[i];
            throw InvalidInput("line " + std::to_string(i + 1) + ": missing or non-numeric value '" + shown +
                               "' (missing values are not imputed)");
        }
        values.push_back(*v);
    }
    if (values.empty()) throw InvalidInput("'" + path + "' contains no observations");
    return TimeSeries(std::move(values));
}

json analyze(const TimeSeries& x, const AnalysisRequest& request) {
    const StatisticSpec stat = request.statistic.build();
    if (request.variance_mode == VarianceMode::normal_hybrid && stat.kind() != StatisticKind::spectral_mean) {
        throw InvalidInput("normal-hybrid applies to spectral-mean statistics only, not to ratio '" + stat.name + "'");
    }
    if (!(request.alpha > 0.0 && request.alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
    const std::size_t T = x.size();
    const std::size_t b = request.b ? *request.b : default_block_length(T);
    const SkipSamplePlan plan = make_plan(T, b);
    if (plan.q < 2) {
        throw InsufficientSubsamples("need at least 2b observations: T = " + std::to_string(T) +
                                     ", b = " + std::to_string(b));
    }
    const TimeSeries xt = plan.effective_T == T ? x : x.head(plan.effective_T);
    const Periodogram I = periodogram_at_fourier(xt);
    const StatisticValue full = full_statistic(I, stat);
    const auto skip = skip_statistics(I, stat, plan);
    const auto values = values_of(skip);

    const RootScaling scaling;
    VarianceEstimate v = variance_estimator(std::span<const double>(values), scaling, plan);
    json report = {{"schema_version", kSchemaVersion},
                   {"command", "analyze"},
                   {"request", to_json(request)},
                   {"n_observations", T},
                   {"plan", skipdft::to_json(plan)},
                   {"theta_hat", full.value},
                   {"v_hat", v.v_hat}};
    json warnings = json::array();
    if (full.warning) warnings.push_back("full statistic: " + *full.warning);
    for (const auto& s : skip) {
        if (s.warning) warnings.push_back("skip statistic " + std::to_string(*s.j) + ": " + *s.warning);
    }

    Interval ci;
    switch (request.variance_mode) {
        case VarianceMode::subsampling_quantiles: {
            const auto roots = build_roots(std::span<const double>(values), full.value, scaling, plan);
            ci = subsampling_ci(full.value, roots, request.alpha, scaling, plan.effective_T);
            break;
        }
        case VarianceMode::normal_vhat:
            ci = normal_ci(full.value, v, request.alpha, plan.effective_T, scaling);
            break;
        case VarianceMode::normal_hybrid: {
            const std::size_t bw = request.bandwidth == 0 ? default_bandwidth(plan.effective_T) : request.bandwidth;
            const auto& g = std::get<SpectralFunctional>(stat.form);
            const double gf = plug_in_spectral_mean_fhat(xt, g, bw);
            v = hybrid_variance(v, request.eta, gf);
            if (v.warning) warnings.push_back(*v.warning);
            report["hybrid"] = {{"eta", request.eta}, {"bandwidth", bw}, {"g_fhat_mean", gf}};
            report["v_hat_corrected"] = v.v_hat;
            ci = normal_ci(full.value, v, request.alpha, plan.effective_T, scaling);
            break;
        }
    }
    report["ci"] = {{"lower", ci.lower}, {"upper", ci.upper}, {"level", 1.0 - request.alpha}};
    report["skip_statistics"] = values;
    report["warnings"] = warnings;
    return report;
}

std::string analysis_csv(const json& report) {
    // numbers go through the JSON serializer so both formats print identical digits
    std::ostringstream os;
    os << "name,index,value\n";
    auto row = [&](const std::string& name, const std::string& index, const json& value) {
        os << name << ',' << index << ',' << value.dump() << '\n';
    };
    for (const char* key : {"T", "b", "q", "effective_T"}) row(key, "", report.at("plan").at(key));
    row("theta_hat", "", report.at("theta_hat"));
    row("v_hat", "", report.at("v_hat"));
    if (report.contains("v_hat_corrected")) {
        row("v_hat_corrected", "", report.at("v_hat_corrected"));
        row("g_fhat_mean", "", report.at("hybrid").at("g_fhat_mean"));
    }
    row("ci_lower", "", report.at("ci").at("lower"));
    row("ci_upper", "", report.at("ci").at("upper"));
    row("ci_level", "", report.at("ci").at("level"));
    const auto& skip = report.at("skip_statistics");
    for (std::size_t j = 0; j < skip.size(); ++j) row("skip_statistic", std::to_string(j + 1), skip[j]);
    return os.str();
}

int run_analyze(const AnalysisRequest& request, std::ostream& out, std::ostream& err) {
    const char* stage = "read-input";
    try {
        const TimeSeries x = read_series_csv(request.input);
        stage = "analyze";
        const json report = analyze(x, request);
        for (const auto& w : report.at("warnings")) err << "warning: " << w.get<std::string>() << '\n';
        if (request.format == OutputFormat::csv) {
            out << analysis_csv(report);
        } else {
            out << report.dump(2) << '\n';
        }
        return kExitOk;
    } catch (const DegenerateStatistic& e) {
        err << "error [" << stage << "]: degenerate statistic: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::exception& e) {
        err << "error [" << stage << "]: " << e.what() << '\n';
        return kExitUsage;
    }
}

bool acceptance_checks_pass(const json& report) {
    const auto it = report.find("checks");
    if (it == report.end()) return true;
    for (const auto& c : *it) {
        if (c.value("acceptance", false) && !c.value("pass", false)) return false;
    }
    return true;
}

int run_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
    json config;
    {
        std::ifstream in(options.config);
        if (!in) {
            err << "error [read-config]: cannot open '" << options.config << "'\n";
            return kExitUsage;
        }
        try {
            config = json::parse(in);
        } catch (const json::parse_error& e) {
            err << "error [read-config]: " << options.config << ": " << e.what() << '\n';
            return kExitUsage;
        }
    }
    json report;
    try {
        report = run_experiment(config, options.workers);
    } catch (const ConfigError& e) {
        err << "error [config]: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error [experiment]: " << e.what() << '\n';
        return kExitUsage;
    }
    if (options.timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm utc{};
        gmtime_r(&now, &utc);
        std::ostringstream ts;
        ts << std::put_time(&utc, "%FT%TZ");
        report["generated_at"] = ts.str();
    }
    const std::string text = report.dump(2) + "\n";
    if (options.out) {
        std::ofstream f(*options.out, std::ios::binary);
        if (!f || !(f << text)) {
            err << "error [write-report]: cannot write '" << *options.out << "'\n";
            return kExitUsage;
        }
    } else {
        out << text;
    }
    if (!acceptance_checks_pass(report)) {
        err << "simulate: an acceptance check failed\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

}  // namespace skipdft::cli
