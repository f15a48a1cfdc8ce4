#include "mifx/model_io.hpp"

#include <fstream>

#include "mifx/errors.hpp"

namespace mifx {

nlohmann::ordered_json hist_to_json(const HistogramConfig& cfg) {
    nlohmann::ordered_json j;
    j["n_bins"] = cfg.n_bins;
    j["range_policy"] = cfg.range_policy == RangePolicy::Fixed ? "fixed" : "data-min-max";
    if (cfg.range_policy == RangePolicy::Fixed) {
        j["lo"] = cfg.fixed_lo;
        j["hi"] = cfg.fixed_hi;
    }
    j["log_base"] = cfg.log_base == LogBase::Two ? "2" : "e";
    j["bias_correction"] = cfg.bias_correction;
    return j;
}

HistogramConfig hist_from_json(const nlohmann::json& j) {
    HistogramConfig cfg;
    cfg.n_bins = j.value("n_bins", 32);
    std::string policy = j.value("range_policy", "data-min-max");
    if (policy == "fixed") {
        cfg.range_policy = RangePolicy::Fixed;
        cfg.fixed_lo = j.at("lo").get<double>();
        cfg.fixed_hi = j.at("hi").get<double>();
    } else if (policy == "data-min-max") {
        cfg.range_policy = RangePolicy::DataMinMax;
    } else {
        throw DataError("unknown range policy: " + policy);
    }
    cfg.log_base = j.value("log_base", "2") == "e" ? LogBase::E : LogBase::Two;
    cfg.bias_correction = j.value("bias_correction", false);
    cfg.validate();
    return cfg;
}

nlohmann::ordered_json ga_to_json(const GaConfig& cfg) {
    nlohmann::ordered_json j;
    j["population"] = cfg.population;
    j["generations"] = cfg.generations;
    j["tournament_size"] = cfg.tournament_size;
    j["crossover_prob"] = cfg.crossover_prob;
    j["blend_alpha"] = cfg.blend_alpha;
    j["mutation_sigma"] = cfg.mutation_sigma;
    j["mutation_prob"] = cfg.mutation_prob;
    j["elites"] = cfg.elites;
    j["restarts"] = cfg.restarts;
    j["refine"] = cfg.refine;
    return j;
}

GaConfig ga_from_json(const nlohmann::json& j) {
    GaConfig cfg;
    cfg.population = j.value("population", cfg.population);
    cfg.generations = j.value("generations", cfg.generations);
    cfg.tournament_size = j.value("tournament_size", cfg.tournament_size);
    cfg.crossover_prob = j.value("crossover_prob", cfg.crossover_prob);
    cfg.blend_alpha = j.value("blend_alpha", cfg.blend_alpha);
    cfg.mutation_sigma = j.value("mutation_sigma", cfg.mutation_sigma);
    cfg.mutation_prob = j.value("mutation_prob", cfg.mutation_prob);
    cfg.elites = j.value("elites", cfg.elites);
    cfg.restarts = j.value("restarts", cfg.restarts);
    cfg.refine = j.value("refine", cfg.refine);
    cfg.validate();
    return cfg;
}

nlohmann::ordered_json model_to_json(const ExtractionResult& result,
                                     const HistogramConfig& hist, std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["d"] = result.projection.d;
    j["t"] = result.projection.t();
    j["method"] = result.projection.method_tag;
    j["vectors"] = result.projection.vectors;
    j["hist"] = hist_to_json(hist);
    j["seed"] = seed;
    nlohmann::ordered_json diags = nlohmann::json::array();
    for (const auto& diag : result.diagnostics) {
        nlohmann::ordered_json entry;
        entry["relevance"] = diag.relevance;
        entry["penalty"] = diag.penalty;
        entry["objective"] = diag.objective;
        diags.push_back(entry);
    }
    j["diagnostics"] = diags;
    return j;
}

ExtractionResult model_from_json(const nlohmann::json& j) {
    ExtractionResult result;
    result.projection.d = j.at("d").get<std::size_t>();
    result.projection.method_tag = j.at("method").get<std::string>();
    result.projection.vectors =
        j.at("vectors").get<std::vector<std::vector<double>>>();
    if (j.contains("diagnostics")) {
        for (const auto& entry : j.at("diagnostics")) {
            ComponentDiagnostics diag;
            diag.relevance = entry.value("relevance", 0.0);
            diag.penalty = entry.value("penalty", 0.0);
            diag.objective = entry.value("objective", 0.0);
            result.diagnostics.push_back(diag);
        }
    }
    result.projection.validate();
    return result;
}

nlohmann::ordered_json report_to_json(const EvaluationReport& report) {
    nlohmann::ordered_json j;
    j["dataset_name"] = report.dataset_name;
    j["method"] = report.method;
    j["classifier"] = report.classifier;
    j["dims_evaluated"] = report.dims_evaluated;
    j["fold_accuracies"] = report.fold_accuracies;
    j["mean_accuracy"] = report.mean_accuracy;
    j["seed"] = report.seed;
    j["config_digest"] = report.config_digest;
    return j;
}

EvaluationReport report_from_json(const nlohmann::json& j) {
    EvaluationReport report;
    report.dataset_name = j.at("dataset_name").get<std::string>();
    report.method = j.at("method").get<std::string>();
    report.classifier = j.at("classifier").get<std::string>();
    report.dims_evaluated = j.at("dims_evaluated").get<std::vector<int>>();
    report.fold_accuracies =
        j.at("fold_accuracies").get<std::vector<std::vector<double>>>();
    report.mean_accuracy = j.at("mean_accuracy").get<std::vector<double>>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.config_digest = j.at("config_digest").get<std::string>();
    report.validate();
    return report;
}

void write_json(const nlohmann::ordered_json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << doc.dump(2) << '\n';
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError("invalid JSON in " + path + ": " + e.what());
    }
}

std::string config_digest(const nlohmann::ordered_json& config) {
    const std::string dump = config.dump();
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : dump) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace mifx
