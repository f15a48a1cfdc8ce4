// mifx: component-by-component mutual-information feature extraction,
// PCA/LDA baselines, KNN cross-validation, and MI probing over CSV data.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mifx/baselines.hpp"
#include "mifx/dataset.hpp"
#include "mifx/errors.hpp"
#include "mifx/evaluation.hpp"
#include "mifx/extraction.hpp"
#include "mifx/info_theory.hpp"
#include "mifx/model_io.hpp"

namespace {

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

std::vector<int> parse_dims(const std::string& spec) {
    std::vector<int> dims;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        auto dash = token.find('-');
        try {
            if (dash != std::string::npos && dash > 0) {
                int lo = std::stoi(token.substr(0, dash));
                int hi = std::stoi(token.substr(dash + 1));
                if (lo < 1 || hi < lo) throw UsageError("bad dims range: " + token);
                for (int v = lo; v <= hi; ++v) dims.push_back(v);
            } else {
                dims.push_back(std::stoi(token));
            }
        } catch (const std::invalid_argument&) {
            throw UsageError("cannot parse dims token: " + token);
        }
    }
    if (dims.empty()) throw UsageError("empty dims spec");
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
    return dims;
}

struct HistFlags {
    int bins = 32;
    std::string log_base = "2";
    bool bias_correction = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--bins", bins, "Histogram bin count")->check(CLI::Range(2, 4096));
        cmd->add_option("--log-base", log_base, "Logarithm base: 2 or e")
            ->check(CLI::IsMember({"2", "e"}));
        cmd->add_flag("--bias-correction", bias_correction,
                      "Histogram-cell bias correction for entropy/MI estimates");
    }
    mifx::HistogramConfig build() const {
        mifx::HistogramConfig cfg;
        cfg.n_bins = bins;
        cfg.log_base = log_base == "e" ? mifx::LogBase::E : mifx::LogBase::Two;
        cfg.bias_correction = bias_correction;
        return cfg;
    }
};

struct GaFlags {
    mifx::GaConfig cfg;

    void attach(CLI::App* cmd) {
        cmd->add_option("--ga-population", cfg.population, "GA population size");
        cmd->add_option("--ga-generations", cfg.generations, "GA generations");
        cmd->add_option("--ga-tournament", cfg.tournament_size, "Tournament size");
        cmd->add_option("--ga-crossover", cfg.crossover_prob, "Crossover probability");
        cmd->add_option("--ga-blend-alpha", cfg.blend_alpha, "BLX-alpha blend width");
        cmd->add_option("--ga-mutation-sigma", cfg.mutation_sigma,
                        "Gaussian mutation sigma");
        cmd->add_option("--ga-mutation-prob", cfg.mutation_prob,
                        "Per-gene mutation probability (default 1/d)");
        cmd->add_option("--ga-elites", cfg.elites, "Elites carried per generation");
        cmd->add_option("--ga-restarts", cfg.restarts, "Independent GA restarts");
        cmd->add_flag("--ga-refine", cfg.refine,
                      "Finite-difference hill climb after the GA");
    }
};

std::string dataset_stem(const std::string& path) {
    auto slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

// --- mi subcommand helpers: untyped CSV access -----------------------------

struct RawCsv {
    std::vector<std::string> names;                // empty if no header
    std::vector<std::vector<std::string>> columns; // [col][row]
};

RawCsv load_raw_csv(const std::string& path, bool header) {
    std::ifstream in(path);
    if (!in) throw mifx::DataError("cannot open file: " + path);
    RawCsv csv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (header && line_no == 1) {
            csv.names = cells;
            csv.columns.resize(cells.size());
            continue;
        }
        if (csv.columns.empty()) csv.columns.resize(cells.size());
        if (cells.size() != csv.columns.size())
            throw mifx::DataError("row " + std::to_string(line_no) +
                                  ": inconsistent column count");
        for (std::size_t j = 0; j < cells.size(); ++j)
            csv.columns[j].push_back(cells[j]);
    }
    if (csv.columns.empty() || csv.columns[0].empty())
        throw mifx::DataError("no data rows in " + path);
    return csv;
}

std::size_t resolve_column(const RawCsv& csv, const std::string& spec) {
    if (spec == "last") return csv.columns.size() - 1;
    if (!spec.empty() && std::all_of(spec.begin(), spec.end(), [](unsigned char ch) {
            return std::isdigit(ch);
        })) {
        std::size_t idx = std::stoull(spec);
        if (idx >= csv.columns.size())
            throw UsageError("column index " + spec + " out of range");
        return idx;
    }
    auto it = std::find(csv.names.begin(), csv.names.end(), spec);
    if (it == csv.names.end()) throw UsageError("column '" + spec + "' not found");
    return static_cast<std::size_t>(it - csv.names.begin());
}

std::vector<double> numeric_column(const RawCsv& csv, std::size_t col) {
    std::vector<double> out;
    out.reserve(csv.columns[col].size());
    for (std::size_t i = 0; i < csv.columns[col].size(); ++i) {
        try {
            out.push_back(std::stod(csv.columns[col][i]));
        } catch (const std::exception&) {
            throw mifx::DataError("row " + std::to_string(i + 1) + ", column " +
                                  std::to_string(col) + ": cannot parse '" +
                                  csv.columns[col][i] + "' as a number");
        }
        if (!std::isfinite(out.back()))
            throw mifx::DataError("non-finite value in column " + std::to_string(col));
    }
    return out;
}

std::vector<int> encode_labels(const RawCsv& csv, std::size_t col) {
    std::vector<int> out;
    std::vector<std::string> seen;
    for (const auto& cell : csv.columns[col]) {
        auto it = std::find(seen.begin(), seen.end(), cell);
        if (it == seen.end()) {
            seen.push_back(cell);
            it = seen.end() - 1;
        }
        out.push_back(static_cast<int>(it - seen.begin()));
    }
    return out;
}

// --- subcommand bodies ------------------------------------------------------

int run_extract(const std::string& data_path, const std::string& label_col,
                bool header, const std::string& method, int t, std::uint64_t seed,
                const std::string& out_path, bool normalize, const HistFlags& hist,
                const GaFlags& ga, double entropy_floor) {
    mifx::Dataset data =
        mifx::load_csv(data_path, mifx::LabelColumn::parse(label_col), header);
    if (t < 1 || static_cast<std::size_t>(t) > data.d())
        throw UsageError("dims exceeds feature count (d = " + std::to_string(data.d()) +
                         ")");
    if (normalize) data = mifx::apply_normalizer(mifx::fit_normalizer(data), data);

    mifx::ExtractionConfig cfg;
    cfg.t = t;
    cfg.hist = hist.build();
    cfg.ga = ga.cfg;
    cfg.entropy_floor = entropy_floor;

    nlohmann::ordered_json resolved;
    resolved["command"] = "extract";
    resolved["method"] = method;
    resolved["t"] = t;
    resolved["seed"] = seed;
    resolved["normalize"] = normalize;
    resolved["hist"] = mifx::hist_to_json(cfg.hist);
    resolved["ga"] = mifx::ga_to_json(cfg.ga);
    resolved["entropy_floor"] = cfg.entropy_floor;
    std::cout << "seed: " << seed << "\n";
    std::cout << "config_digest: " << mifx::config_digest(resolved) << "\n";

    mifx::ExtractionResult result;
    if (method == "mifx") {
        result = mifx::extract(data, cfg, seed);
        for (std::size_t i = 0; i < result.diagnostics.size(); ++i) {
            const auto& diag = result.diagnostics[i];
            std::cout << "component " << (i + 1) << ": relevance=" << diag.relevance
                      << " penalty=" << diag.penalty << " objective=" << diag.objective
                      << "\n";
        }
    } else if (method == "pca") {
        result.projection = mifx::pca_fit(data, t);
    } else if (method == "lda") {
        result.projection = mifx::lda_fit(data, t);
    } else {
        throw UsageError("unknown method: " + method);
    }

    if (!out_path.empty())
        mifx::write_json(mifx::model_to_json(result, cfg.hist, seed), out_path);
    return 0;
}

int run_evaluate(const std::string& data_path, const std::string& label_col,
                 bool header, const std::string& method_spec,
                 const std::string& dims_spec, int folds, std::uint64_t seed,
                 int threads, int knn_k, bool no_stratify, const std::string& out_path,
                 const std::string& format, const std::string& name,
                 const HistFlags& hist, const GaFlags& ga, double entropy_floor) {
    mifx::Dataset data =
        mifx::load_csv(data_path, mifx::LabelColumn::parse(label_col), header);
    std::vector<int> dims = parse_dims(dims_spec);
    if (static_cast<std::size_t>(dims.back()) > data.d())
        throw UsageError("dims exceeds feature count (d = " + std::to_string(data.d()) +
                         ")");

    std::vector<std::string> methods;
    if (method_spec == "all")
        methods = {"raw", "pca", "lda", "mifx"};
    else
        methods = {method_spec};

    mifx::ExtractionConfig cfg;
    cfg.hist = hist.build();
    cfg.ga = ga.cfg;
    cfg.entropy_floor = entropy_floor;

    nlohmann::ordered_json resolved;
    resolved["command"] = "evaluate";
    resolved["methods"] = methods;
    resolved["dims"] = dims;
    resolved["folds"] = folds;
    resolved["seed"] = seed;
    resolved["knn_k"] = knn_k;
    resolved["stratified"] = !no_stratify;
    resolved["hist"] = mifx::hist_to_json(cfg.hist);
    resolved["ga"] = mifx::ga_to_json(cfg.ga);
    resolved["entropy_floor"] = cfg.entropy_floor;
    std::string digest = mifx::config_digest(resolved);
    std::cout << "seed: " << seed << "\n";
    std::cout << "config_digest: " << digest << "\n";

    mifx::CrossValidateOptions opts;
    opts.folds = folds;
    opts.seed = seed;
    opts.threads = threads;
    opts.stratified = !no_stratify;
    opts.knn_k = knn_k;
    opts.dataset_name = name.empty() ? dataset_stem(data_path) : name;
    opts.config_digest = digest;

    std::vector<mifx::EvaluationReport> reports;
    for (const auto& m : methods)
        reports.push_back(mifx::cross_validate(data, mifx::method_from_name(m), dims,
                                               cfg, opts));

    mifx::TableFormat fmt = format == "csv"    ? mifx::TableFormat::Csv
                            : format == "json" ? mifx::TableFormat::Json
                                               : mifx::TableFormat::Markdown;
    std::cout << mifx::render_table(reports, fmt);

    if (!out_path.empty()) {
        nlohmann::ordered_json doc;
        doc["reports"] = nlohmann::ordered_json::array();
        for (const auto& r : reports) doc["reports"].push_back(mifx::report_to_json(r));
        mifx::write_json(doc, out_path);
    }
    return 0;
}

int run_mi(const std::string& data_path, bool header, const std::string& x_spec,
           const std::string& y_spec, const std::string& label_spec,
           const HistFlags& hist) {
    RawCsv csv = load_raw_csv(data_path, header);
    mifx::HistogramConfig cfg = hist.build();

    if (x_spec.empty()) throw UsageError("--x is required");
    std::size_t xc = resolve_column(csv, x_spec);
    auto x = numeric_column(csv, xc);

    nlohmann::ordered_json resolved;
    resolved["command"] = "mi";
    resolved["x"] = x_spec;
    resolved["y"] = y_spec;
    resolved["label"] = label_spec;
    resolved["hist"] = mifx::hist_to_json(cfg);
    std::cout << "config_digest: " << mifx::config_digest(resolved) << "\n";

    const char* unit = cfg.log_base == mifx::LogBase::Two ? "bits" : "nats";
    if (!label_spec.empty()) {
        std::size_t lc = resolve_column(csv, label_spec);
        auto labels = encode_labels(csv, lc);
        int n_classes = *std::max_element(labels.begin(), labels.end()) + 1;
        double h_c = mifx::entropy_discrete(labels, cfg.log_base);
        double mi = mifx::mi_cd(x, labels, cfg);
        std::cout << "H(C) = " << h_c << " " << unit << "\n";
        std::cout << "I(x;C) = " << mi << " " << unit << "\n";
        if (!y_spec.empty()) {
            auto y = numeric_column(csv, resolve_column(csv, y_spec));
            std::cout << "I((x,y);C) = " << mifx::mi_2d_cd(x, y, labels, cfg) << " "
                      << unit << "\n";
        }
        if (n_classes >= 2) {
            double h_bits = cfg.log_base == mifx::LogBase::Two ? h_c : h_c / std::log(2.0);
            double mi_bits = cfg.log_base == mifx::LogBase::Two ? mi : mi / std::log(2.0);
            auto bounds = mifx::bayes_error_bounds(h_bits, mi_bits, n_classes);
            std::cout << "bayes_error_lower = " << bounds.lower << "\n";
            std::cout << "bayes_error_upper = " << bounds.upper << "\n";
        }
    } else if (!y_spec.empty()) {
        auto y = numeric_column(csv, resolve_column(csv, y_spec));
        std::cout << "I(x;y) = " << mifx::mi_cc(x, y, cfg) << " " << unit << "\n";
    } else {
        std::cout << "H(x) = " << mifx::entropy_binned(x, cfg) << " " << unit << "\n";
    }
    return 0;
}

int run_compare(const std::vector<std::string>& report_paths,
                const std::string& reference_path, const std::string& format,
                const std::string& out_path) {
    std::vector<mifx::EvaluationReport> reports;
    for (const auto& path : report_paths) {
        nlohmann::json doc = mifx::read_json(path);
        if (doc.contains("reports"))
            for (const auto& r : doc["reports"])
                reports.push_back(mifx::report_from_json(r));
        else
            reports.push_back(mifx::report_from_json(doc));
    }

    mifx::ReferenceColumns refs;
    bool have_refs = false;
    if (!reference_path.empty()) {
        RawCsv csv = load_raw_csv(reference_path, true);
        if (csv.names.empty() || csv.names[0] != "dim")
            throw mifx::DataError("reference CSV must start with a 'dim' column");
        for (std::size_t j = 1; j < csv.names.size(); ++j)
            refs.names.push_back(csv.names[j]);
        for (std::size_t i = 0; i < csv.columns[0].size(); ++i) {
            int dim = std::stoi(csv.columns[0][i]);
            std::vector<double> vals;
            for (std::size_t j = 1; j < csv.names.size(); ++j) {
                const std::string& cell = csv.columns[j][i];
                if (cell.empty() || cell == "-")
                    vals.push_back(std::numeric_limits<double>::quiet_NaN());
                else
                    vals.push_back(std::stod(cell));
            }
            refs.values[dim] = vals;
        }
        have_refs = true;
    }

    mifx::TableFormat fmt = format == "csv"    ? mifx::TableFormat::Csv
                            : format == "json" ? mifx::TableFormat::Json
                                               : mifx::TableFormat::Markdown;
    std::string table =
        mifx::render_table(reports, fmt, have_refs ? &refs : nullptr);
    std::cout << table;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw mifx::DataError("cannot write file: " + out_path);
        out << table;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MIFX: mutual-information feature extraction and evaluation"};
    app.require_subcommand(1);

    // extract
    auto* extract_cmd = app.add_subcommand("extract", "Fit a projection and save it");
    std::string ex_data, ex_label = "last", ex_method = "mifx", ex_out;
    bool ex_header = false, ex_normalize = false;
    int ex_t = 1;
    std::uint64_t ex_seed = 42;
    double ex_floor = 1e-6;
    HistFlags ex_hist;
    GaFlags ex_ga;
    extract_cmd->add_option("--data", ex_data, "Input CSV")->required();
    extract_cmd->add_option("--label-col", ex_label,
                            "Label column: index, header name, or 'last'");
    extract_cmd->add_flag("--header", ex_header, "First CSV row is a header");
    extract_cmd->add_option("--method", ex_method, "mifx, pca, or lda")
        ->check(CLI::IsMember({"mifx", "pca", "lda"}));
    extract_cmd->add_option("--dims", ex_t, "Number of components to extract")
        ->required();
    extract_cmd->add_option("--seed", ex_seed, "RNG seed");
    extract_cmd->add_option("--out", ex_out, "Model JSON output path");
    extract_cmd->add_flag("--normalize", ex_normalize,
                          "Divide by per-feature absolute maxima first");
    extract_cmd->add_option("--entropy-floor", ex_floor,
                            "Redundancy denominator floor");
    ex_hist.attach(extract_cmd);
    ex_ga.attach(extract_cmd);

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "Cross-validate a method");
    std::string ev_data, ev_label = "last", ev_method = "mifx", ev_dims = "1-7",
                ev_out, ev_format = "markdown", ev_name;
    bool ev_header = false, ev_no_stratify = false;
    int ev_folds = 10, ev_threads = 0, ev_knn = 1;
    std::uint64_t ev_seed = 42;
    double ev_floor = 1e-6;
    HistFlags ev_hist;
    GaFlags ev_ga;
    eval_cmd->add_option("--data", ev_data, "Input CSV")->required();
    eval_cmd->add_option("--label-col", ev_label,
                         "Label column: index, header name, or 'last'");
    eval_cmd->add_flag("--header", ev_header, "First CSV row is a header");
    eval_cmd->add_option("--method", ev_method, "raw, pca, lda, mifx, or all")
        ->check(CLI::IsMember({"raw", "pca", "lda", "mifx", "all"}));
    eval_cmd->add_option("--dims", ev_dims, "Dims to evaluate, e.g. 1-7 or 1,2,5");
    eval_cmd->add_option("--folds", ev_folds, "Cross-validation fold count");
    eval_cmd->add_option("--seed", ev_seed, "RNG seed");
    eval_cmd->add_option("--threads", ev_threads,
                         "Worker thread cap (0: machine parallelism)");
    eval_cmd->add_option("--knn-k", ev_knn, "KNN neighbor count");
    eval_cmd->add_flag("--no-stratify", ev_no_stratify, "Disable stratified folds");
    eval_cmd->add_option("--out", ev_out, "Report JSON output path");
    eval_cmd->add_option("--format", ev_format, "Table format")
        ->check(CLI::IsMember({"markdown", "csv", "json"}));
    eval_cmd->add_option("--name", ev_name, "Dataset name for the report");
    eval_cmd->add_option("--entropy-floor", ev_floor, "Redundancy denominator floor");
    ev_hist.attach(eval_cmd);
    ev_ga.attach(eval_cmd);

    // mi
    auto* mi_cmd = app.add_subcommand("mi", "Entropy / MI probes on CSV columns");
    std::string mi_data, mi_x, mi_y, mi_label;
    bool mi_header = false;
    HistFlags mi_hist;
    mi_cmd->add_option("--data", mi_data, "Input CSV")->required();
    mi_cmd->add_flag("--header", mi_header, "First CSV row is a header");
    mi_cmd->add_option("--x", mi_x, "Column for x (index, name, or 'last')")
        ->required();
    mi_cmd->add_option("--y", mi_y, "Column for y");
    mi_cmd->add_option("--label-col", mi_label, "Class label column");
    mi_hist.attach(mi_cmd);

    // compare
    auto* cmp_cmd = app.add_subcommand("compare", "Merge reports into one table");
    std::vector<std::string> cmp_reports;
    std::string cmp_reference, cmp_format = "markdown", cmp_out;
    cmp_cmd->add_option("reports", cmp_reports, "Report JSON files")->required();
    cmp_cmd->add_option("--reference", cmp_reference,
                        "CSV of reference values (header: dim,<method>...)");
    cmp_cmd->add_option("--format", cmp_format, "Table format")
        ->check(CLI::IsMember({"markdown", "csv", "json"}));
    cmp_cmd->add_option("--out", cmp_out, "Write the table to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (extract_cmd->parsed())
            return run_extract(ex_data, ex_label, ex_header, ex_method, ex_t, ex_seed,
                               ex_out, ex_normalize, ex_hist, ex_ga, ex_floor);
        if (eval_cmd->parsed())
            return run_evaluate(ev_data, ev_label, ev_header, ev_method, ev_dims,
                                ev_folds, ev_seed, ev_threads, ev_knn, ev_no_stratify,
                                ev_out, ev_format, ev_name, ev_hist, ev_ga, ev_floor);
        if (mi_cmd->parsed())
            return run_mi(mi_data, mi_header, mi_x, mi_y, mi_label, mi_hist);
        if (cmp_cmd->parsed())
            return run_compare(cmp_reports, cmp_reference, cmp_format, cmp_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mifx::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const mifx::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
