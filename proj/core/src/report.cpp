#include "skipdft/experiments.hpp"

#include "skipdft/error.hpp"

#include <cmath>
#include <limits>

namespace skipdft {

using nlohmann::json;

namespace {

// NaN and infinities have no JSON spelling; they are written as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json numbers(const std::vector<double>& v) {
    json out = json::array();
    for (double x : v) out.push_back(number(x));
    return out;
}

const json* field(const json& j, const char* key) {
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

std::string child(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }

double read_double(const json& j, const char* key, double fallback, const std::string& pointer) {
    const json* v = field(j, key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(child(pointer, key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) throw ConfigError(child(pointer, key), "expected a finite number");
    return d;
}

// nlohmann keeps literal ints signed, so accept both integer storages.
bool is_count(const json& v) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::uint64_t read_uint(const json& j, const char* key, std::uint64_t fallback, const std::string& pointer) {
    const json* v = field(j, key);
    if (!v) return fallback;
    if (v->is_number_unsigned()) return v->get<std::uint64_t>();
    if (v->is_number_integer()) {
        const auto i = v->get<std::int64_t>();
        if (i < 0) throw ConfigError(child(pointer, key), "expected a non-negative integer");
        return static_cast<std::uint64_t>(i);
    }
    throw ConfigError(child(pointer, key), "expected an integer");
}

std::size_t read_size(const json& j, const char* key, std::size_t fallback, const std::string& pointer,
                      std::size_t minimum) {
    const auto v = read_uint(j, key, fallback, pointer);
    if (v < minimum) {
        throw ConfigError(child(pointer, key), "must be >= " + std::to_string(minimum));
    }
    return static_cast<std::size_t>(v);
}

bool read_bool(const json& j, const char* key, bool fallback, const std::string& pointer) {
    const json* v = field(j, key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(child(pointer, key), "expected true or false");
    return v->get<bool>();
}

std::string read_string(const json& j, const char* key, const std::string& fallback, const std::string& pointer) {
    const json* v = field(j, key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(child(pointer, key), "expected a string");
    return v->get<std::string>();
}

std::vector<double> read_doubles(const json& j, const char* key, const std::string& pointer) {
    const json* v = field(j, key);
    if (!v) return {};
    if (!v->is_array()) throw ConfigError(child(pointer, key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
        const json& e = (*v)[i];
        if (!e.is_number() || !std::isfinite(e.get<double>())) {
            throw ConfigError(child(pointer, key) + "/" + std::to_string(i), "expected a finite number");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

bool mc_tag(std::size_t replications) { return replications >= kAcceptanceReplications; }

void require_object(const json& j, const std::string& pointer) {
    if (!j.is_object()) throw ConfigError(pointer.empty() ? "/" : pointer, "expected an object");
}

}  // namespace

json to_json(const StatisticDescriptor& d) {
    json j = {{"name", d.name}};
    if (d.name == "autocovariance" || d.name == "autocorrelation") j["k"] = d.k;
    if (d.name == "trig" || d.name == "trig-ratio") {
        j["cos"] = d.cos_coefficients;
        j["sin"] = d.sin_coefficients;
    }
    if (d.name == "trig-ratio") {
        j["den_cos"] = d.den_cos_coefficients;
        j["den_sin"] = d.den_sin_coefficients;
    }
    return j;
}

StatisticDescriptor statistic_from_json(const json& j, const std::string& pointer) {
    StatisticDescriptor d;
    if (j.is_string()) {
        d.name = j.get<std::string>();
    } else {
        require_object(j, pointer);
        d.name = read_string(j, "name", d.name, pointer);
        if (const json* k = field(j, "k")) {
            if (!k->is_number_integer()) throw ConfigError(child(pointer, "k"), "expected an integer lag");
            d.k = k->get<long>();
        }
        d.cos_coefficients = read_doubles(j, "cos", pointer);
        d.sin_coefficients = read_doubles(j, "sin", pointer);
        d.den_cos_coefficients = read_doubles(j, "den_cos", pointer);
        d.den_sin_coefficients = read_doubles(j, "den_sin", pointer);
    }
    try {
        (void)d.build();
    } catch (const InvalidInput& e) {
        throw ConfigError(pointer.empty() ? "/" : pointer, e.what());
    }
    return d;
}

json to_json(const ProcessDescriptor& d) {
    json j = {{"type", d.type}};
    if (d.type == "ar1") j["phi"] = d.phi;
    if (d.type == "ma") j["psi"] = d.psi;
    j["innovation"] = to_string(d.innovation.kind);
    if (d.innovation.kind == InnovationKind::student_t) j["df"] = d.innovation.df;
    j["sigma2"] = d.sigma2;
    j["mean"] = d.mean;
    return j;
}

ProcessDescriptor process_from_json(const json& j, const std::string& pointer) {
    require_object(j, pointer);
    ProcessDescriptor d;
    d.type = read_string(j, "type", d.type, pointer);
    if (d.type != "ar1" && d.type != "ma" && d.type != "white_noise") {
        throw ConfigError(child(pointer, "type"), "unknown process type '" + d.type + "'");
    }
    d.phi = read_double(j, "phi", d.phi, pointer);
    if (d.type == "ar1" && !(std::abs(d.phi) < 1.0)) throw ConfigError(child(pointer, "phi"), "|phi| must be < 1");
    if (field(j, "psi")) {
        d.psi = read_doubles(j, "psi", pointer);
        if (d.psi.empty()) throw ConfigError(child(pointer, "psi"), "expected at least one coefficient");
    }
    try {
        d.innovation.kind = innovation_kind_from_string(read_string(j, "innovation", "gaussian", pointer));
    } catch (const InvalidInput& e) {
        throw ConfigError(child(pointer, "innovation"), e.what());
    }
    d.innovation.df = read_double(j, "df", d.innovation.df, pointer);
    if (d.innovation.kind == InnovationKind::student_t && !(d.innovation.df > 8.0)) {
        throw ConfigError(child(pointer, "df"), "student_t innovations need df > 8");
    }
    d.sigma2 = read_double(j, "sigma2", d.sigma2, pointer);
    if (!(d.sigma2 > 0.0)) throw ConfigError(child(pointer, "sigma2"), "must be positive");
    d.mean = read_double(j, "mean", d.mean, pointer);
    return d;
}

json to_json(const SkipSamplePlan& plan) {
    return {{"T", plan.T}, {"b", plan.b}, {"q", plan.q}, {"effective_T", plan.effective_T}};
}

json to_json(const MonteCarloConfig& c) {
    json j = {{"replications", c.replications}, {"T", c.T},         {"b", c.b},
              {"seed", c.seed},                 {"alpha", c.alpha}, {"statistic", to_json(c.statistic)},
              {"record_replications", c.record_replications}};
    if (c.hybrid) j["hybrid"] = {{"eta", c.hybrid->eta}, {"bandwidth", c.hybrid->bandwidth}};
    return j;
}

json to_json(const Summary& s) {
    return {{"mean", number(s.mean)},
            {"median", number(s.median)},
            {"sd", number(s.sd)},
            {"mse", number(s.mse)},
            {"count", s.count}};
}

json to_json(const VarianceConsistencyReport& r) {
    json j = {{"schema_version", kSchemaVersion},
              {"experiment", "variance_consistency"},
              {"config", to_json(r.config)},
              {"process", to_json(r.process)},
              {"plan", to_json(r.plan)},
              {"reference", {{"variance", r.reference}, {"skip_variance", r.reference_skip}}},
              {"summary", {{"v_hat", to_json(r.uncorrected)}}},
              {"degenerate_replications", r.degenerate_replications}};
    if (r.corrected) j["summary"]["v_hat_corrected"] = to_json(*r.corrected);
    const Summary& target = r.corrected ? *r.corrected : r.uncorrected;
    j["checks"] = json::array({{{"name", "mean_within_tolerance"},
                                {"estimate", r.corrected ? "v_hat_corrected" : "v_hat"},
                                {"value", number(target.mean)},
                                {"reference", r.reference},
                                {"relative_error", number(std::abs(target.mean - r.reference) / std::abs(r.reference))},
                                {"tolerance", r.tolerance},
                                {"acceptance", mc_tag(r.config.replications)},
                                {"pass", r.pass}}});
    j["pass"] = r.pass;
    if (r.config.record_replications) {
        j["replications"] = {{"v_hat", numbers(r.per_replication)}};
        if (r.corrected) j["replications"]["v_hat_corrected"] = numbers(r.per_replication_corrected);
    }
    return j;
}

json to_json(const CoverageReport& r) {
    const bool in_band = r.coverage_subsampling >= r.coverage_band.first &&
                         r.coverage_subsampling <= r.coverage_band.second;
    json j = {{"schema_version", kSchemaVersion},
              {"experiment", "coverage"},
              {"config", to_json(r.config)},
              {"process", to_json(r.process)},
              {"plan", to_json(r.plan)},
              {"reference", {{"theta", r.true_theta}, {"variance", r.reference_variance}}},
              {"summary",
               {{"coverage_subsampling", number(r.coverage_subsampling)},
                {"coverage_normal", number(r.coverage_normal)},
                {"coverage_oracle", number(r.coverage_oracle)},
                {"max_decomposition_residual", r.max_decomposition_residual},
                {"median_ks_feasible", number(r.median_ks_feasible)},
                {"median_ks_oracle", number(r.median_ks_oracle)},
                {"median_ks_oracle_feasible", number(r.median_ks_oracle_feasible)}}},
              {"degenerate_replications", r.degenerate_replications}};
    j["checks"] = json::array({{{"name", "coverage_in_band"},
                                {"value", number(r.coverage_subsampling)},
                                {"band", {r.coverage_band.first, r.coverage_band.second}},
                                {"acceptance", mc_tag(r.config.replications)},
                                {"pass", in_band}},
                               {{"name", "oracle_decomposition"},
                                {"value", r.max_decomposition_residual},
                                {"tolerance", 1e-10},
                                {"acceptance", true},
                                {"pass", r.max_decomposition_residual <= 1e-10}}});
    j["pass"] = r.pass;
    if (r.config.record_replications) j["replications"] = r.per_replication;
    return j;
}

json to_json(const KolmogorovLadderReport& r) {
    json rungs = json::array();
    for (const auto& k : r.rungs) {
        rungs.push_back({{"T", k.T},
                         {"b", k.b},
                         {"median_ks_feasible", number(k.median_ks_feasible)},
                         {"median_ks_oracle_feasible", number(k.median_ks_oracle_feasible)}});
    }
    json config = to_json(r.config);
    config.erase("T");
    config.erase("b");
    return {{"schema_version", kSchemaVersion},
            {"experiment", "kolmogorov_ladder"},
            {"config", config},
            {"process", to_json(r.process)},
            {"reference", {{"theta", r.true_theta}, {"variance", r.reference_variance}}},
            {"summary", {{"rungs", rungs}}},
            {"checks", json::array({{{"name", "feasible_strictly_decreasing"},
                                     {"acceptance", mc_tag(r.config.replications)},
                                     {"pass", r.feasible_monotone}},
                                    {{"name", "oracle_feasible_strictly_decreasing"},
                                     {"acceptance", false},
                                     {"pass", r.oracle_feasible_monotone}}})},
            {"pass", r.pass}};
}

json to_json(const CovarianceDecayReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"T", row.T},
                        {"plan", to_json(row.plan)},
                        {"cov_12", row.cov_12},
                        {"cov_12_se", row.cov_12_se},
                        {"var_mean", row.var_mean},
                        {"b_var", row.b_var},
                        {"b_var_reference", row.b_var_reference},
                        {"cov_sq_roots_12", row.cov_sq_roots_12},
                        {"cov_sq_roots_12_se", row.cov_sq_roots_12_se},
                        {"group_abs_cov", row.group_abs_cov}});
    }
    const auto& last = r.rows.back();
    return {{"schema_version", kSchemaVersion},
            {"experiment", "covariance_decay"},
            {"config",
             {{"statistic", to_json(r.statistic)},
              {"b", r.b},
              {"replications", r.replications},
              {"seed", r.seed},
              {"seed_groups", r.seed_groups}}},
            {"process", to_json(r.process)},
            {"summary",
             {{"rows", rows},
              {"b_var_ratios", numbers(r.b_var_ratios)},
              {"abs_cov_ratios", numbers(r.abs_cov_ratios)},
              {"groups_with_decay", r.groups_with_decay}}},
            {"checks",
             json::array({{{"name", "b_var_ratio_in_band"},
                           {"band", {r.bvar_band_lo, r.bvar_band_hi}},
                           {"acceptance", mc_tag(r.replications)},
                           {"pass", r.bvar_ratio_ok}},
                          {{"name", "cov_within_se"},
                           {"value", std::abs(last.cov_12)},
                           {"limit", r.cov_se_multiple * last.cov_12_se},
                           {"acceptance", mc_tag(r.replications)},
                           {"pass", r.cov_small_ok}},
                          {{"name", "b_var_matches_reference"},
                           {"value", last.b_var},
                           {"reference", last.b_var_reference},
                           {"tolerance", r.reference_tolerance},
                           {"acceptance", mc_tag(r.replications)},
                           {"pass", r.reference_ok}},
                          {{"name", "abs_cov_decreases_in_seed_groups"},
                           {"value", r.groups_with_decay},
                           {"groups", r.seed_groups},
                           {"acceptance", false},
                           {"pass", 3 * r.groups_with_decay >= 2 * r.seed_groups}}})},
            {"pass", r.pass}};
}

namespace {

MonteCarloConfig config_from_json(const json& j) {
    MonteCarloConfig c;
    c.replications = read_size(j, "replications", c.replications, "", 1);
    c.T = read_size(j, "T", c.T, "", 2);
    c.b = read_size(j, "b", c.b, "", 2);
    c.seed = read_uint(j, "seed", c.seed, "");
    c.alpha = read_double(j, "alpha", c.alpha, "");
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError("/alpha", "must lie in (0, 1)");
    c.record_replications = read_bool(j, "record_replications", c.record_replications, "");
    c.workers = read_size(j, "workers", c.workers, "", 1);
    if (const json* s = field(j, "statistic")) c.statistic = statistic_from_json(*s, "/statistic");
    if (const json* h = field(j, "hybrid")) {
        if (!h->is_null()) {
            require_object(*h, "/hybrid");
            HybridSettings hs;
            hs.eta = read_double(*h, "eta", hs.eta, "/hybrid");
            if (!(hs.eta >= 1.0)) throw ConfigError("/hybrid/eta", "kurtosis must be >= 1");
            hs.bandwidth = read_size(*h, "bandwidth", hs.bandwidth, "/hybrid", 0);
            c.hybrid = hs;
        }
    }
    return c;
}

void check_plan(std::size_t T, std::size_t b, const std::string& pointer) {
    if (b > T) throw ConfigError(pointer, "block length b = " + std::to_string(b) + " exceeds T = " + std::to_string(T));
    if (T / b < 2) throw ConfigError(pointer, "plan yields fewer than 2 skip-samples");
}

std::vector<std::size_t> read_sizes(const json& j, const char* key, const std::string& pointer) {
    const json* v = field(j, key);
    if (!v) return {};
    if (!v->is_array()) throw ConfigError(child(pointer, key), "expected an array of integers");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
        if (!is_count((*v)[i])) {
            throw ConfigError(child(pointer, key) + "/" + std::to_string(i), "expected a positive integer");
        }
        out.push_back((*v)[i].get<std::size_t>());
    }
    return out;
}

}  // namespace

json run_experiment(const json& config, std::optional<std::size_t> workers) {
    require_object(config, "");
    const std::string experiment = read_string(config, "experiment", "", "");
    if (experiment.empty()) throw ConfigError("/experiment", "missing experiment name");
    if (const json* v = field(config, "schema_version")) {
        if (!v->is_number_integer() || v->get<int>() != kSchemaVersion) {
            throw ConfigError("/schema_version", "unsupported schema version");
        }
    }
    MonteCarloConfig c = config_from_json(config);
    if (workers) c.workers = std::max<std::size_t>(*workers, 1);
    const json* pj = field(config, "process");
    const ProcessDescriptor process = pj ? process_from_json(*pj, "/process") : ProcessDescriptor{};

    if (c.hybrid && c.statistic.build().kind() != StatisticKind::spectral_mean) {
        throw ConfigError("/hybrid", "hybrid correction applies to spectral-mean statistics only");
    }

    if (experiment == "variance_consistency") {
        check_plan(c.T, c.b, "/b");
        const double tol = read_double(config, "tolerance", 0.15, "");
        if (!(tol > 0.0)) throw ConfigError("/tolerance", "must be positive");
        return to_json(run_variance_consistency(c, process, tol));
    }
    if (experiment == "coverage") {
        check_plan(c.T, c.b, "/b");
        std::pair<double, double> band{0.90, 0.98};
        if (const json* bj = field(config, "coverage_band")) {
            const auto v = read_doubles(config, "coverage_band", "");
            if (v.size() != 2 || !(v[0] <= v[1])) throw ConfigError("/coverage_band", "expected [low, high]");
            band = {v[0], v[1]};
            (void)bj;
        }
        double theta = 0.0;
        if (field(config, "true_theta")) {
            theta = read_double(config, "true_theta", 0.0, "");
        } else {
            theta = true_parameter(c.statistic.build(), process.spectrum());
        }
        return to_json(run_coverage(c, process, theta, band));
    }
    if (experiment == "kolmogorov_ladder") {
        const json* rj = field(config, "rungs");
        if (!rj || !rj->is_array() || rj->empty()) throw ConfigError("/rungs", "expected a non-empty array of [T, b]");
        std::vector<std::pair<std::size_t, std::size_t>> rungs;
        for (std::size_t i = 0; i < rj->size(); ++i) {
            const json& r = (*rj)[i];
            const std::string p = "/rungs/" + std::to_string(i);
            if (!r.is_array() || r.size() != 2 || !is_count(r[0]) || !is_count(r[1])) {
                throw ConfigError(p, "expected [T, b]");
            }
            rungs.emplace_back(r[0].get<std::size_t>(), r[1].get<std::size_t>());
            if (rungs.back().second < 2) throw ConfigError(p + "/1", "b must be >= 2");
            check_plan(rungs.back().first, rungs.back().second, p + "/1");
        }
        return to_json(run_kolmogorov_ladder(c, process, rungs));
    }
    if (experiment == "covariance_decay") {
        auto T_list = read_sizes(config, "T_list", "");
        if (T_list.empty()) throw ConfigError("/T_list", "expected a non-empty array of sample sizes");
        for (std::size_t i = 0; i < T_list.size(); ++i) check_plan(T_list[i], c.b, "/T_list/" + std::to_string(i));
        if (c.replications < 2) throw ConfigError("/replications", "need at least 2 replications");
        const std::size_t groups = read_size(config, "seed_groups", 1, "", 1);
        return to_json(run_covariance_decay(process, c.statistic, c.b, T_list, c.replications, c.seed, c.workers,
                                            groups));
    }
    throw ConfigError("/experiment", "unknown experiment '" + experiment +
                                         "' (expected variance_consistency, coverage, kolmogorov_ladder or "
                                         "covariance_decay)");
}

}  // namespace skipdft
