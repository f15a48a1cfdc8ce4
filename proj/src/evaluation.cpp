#include "mifx/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "mifx/baselines.hpp"
#include "mifx/errors.hpp"
#include "mifx/rng.hpp"

namespace mifx {

std::string method_name(Method m) {
    switch (m) {
    case Method::Raw: return "raw";
    case Method::Pca: return "pca";
    case Method::Lda: return "lda";
    case Method::Mifx: return "mifx";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "raw") return Method::Raw;
    if (name == "pca") return Method::Pca;
    if (name == "lda") return Method::Lda;
    if (name == "mifx") return Method::Mifx;
    throw DataError("unknown method: " + name);
}

void EvaluationReport::validate() const {
    if (dims_evaluated.size() != fold_accuracies.size() ||
        dims_evaluated.size() != mean_accuracy.size())
        throw DataError("report shape mismatch");
    for (std::size_t i = 0; i < dims_evaluated.size(); ++i) {
        double sum = 0.0;
        for (double a : fold_accuracies[i]) {
            if (a < 0.0 || a > 100.0) throw DataError("accuracy out of [0,100]");
            sum += a;
        }
        double mean = sum / static_cast<double>(fold_accuracies[i].size());
        if (std::abs(mean - mean_accuracy[i]) > 1e-9)
            throw DataError("mean accuracy inconsistent with folds");
    }
}

std::vector<int> knn_classify(const Dataset& train, const Dataset& test, int k) {
    if (train.n() == 0) throw DataError("knn: empty training set");
    if (train.d() != test.d()) throw DataError("knn: feature dimension mismatch");
    if (k < 1 || static_cast<std::size_t>(k) > train.n())
        throw DataError("knn: k must be in [1, train size]");

    const std::size_t d = train.d();
    std::vector<int> predictions(test.n());

    for (std::size_t q = 0; q < test.n(); ++q) {
        const double* tq = test.features.data() + q * d;
        if (k == 1) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_idx = 0;
            for (std::size_t i = 0; i < train.n(); ++i) {
                const double* tr = train.features.data() + i * d;
                double dist = 0.0;
                for (std::size_t j = 0; j < d; ++j) {
                    double delta = tq[j] - tr[j];
                    dist += delta * delta;
                }
                if (dist < best) { // ties keep the lowest training index
                    best = dist;
                    best_idx = i;
                }
            }
            predictions[q] = train.labels[best_idx];
            continue;
        }

        std::vector<std::pair<double, std::size_t>> dists(train.n());
        for (std::size_t i = 0; i < train.n(); ++i) {
            const double* tr = train.features.data() + i * d;
            double dist = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                double delta = tq[j] - tr[j];
                dist += delta * delta;
            }
            dists[i] = {dist, i};
        }
        std::partial_sort(dists.begin(), dists.begin() + k, dists.end());

        std::vector<int> votes(static_cast<std::size_t>(train.n_classes), 0);
        for (int i = 0; i < k; ++i)
            ++votes[static_cast<std::size_t>(train.labels[dists[static_cast<std::size_t>(i)].second])];
        int top = *std::max_element(votes.begin(), votes.end());
        // Vote ties broken by the nearest member of any tied class.
        int winner = -1;
        for (int i = 0; i < k && winner < 0; ++i) {
            int lab = train.labels[dists[static_cast<std::size_t>(i)].second];
            if (votes[static_cast<std::size_t>(lab)] == top) winner = lab;
        }
        predictions[q] = winner;
    }
    return predictions;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& actual) {
    if (predicted.size() != actual.size())
        throw DataError("accuracy: length mismatch");
    if (predicted.empty()) throw DataError("accuracy: empty inputs");
    std::size_t matches = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        matches += predicted[i] == actual[i];
    return 100.0 * static_cast<double>(matches) / static_cast<double>(predicted.size());
}

namespace {

ProjectionMatrix identity_projection(std::size_t d, std::size_t t) {
    ProjectionMatrix w;
    w.d = d;
    w.method_tag = "raw";
    for (std::size_t k = 0; k < t; ++k) {
        std::vector<double> v(d, 0.0);
        v[k] = 1.0;
        w.vectors.push_back(std::move(v));
    }
    return w;
}

// Accuracy per requested dim for one train/test fold.
std::vector<double> evaluate_fold(const Dataset& train, const Dataset& test,
                                  Method method, const std::vector<int>& dims,
                                  const ExtractionConfig& cfg, std::uint64_t fold_seed,
                                  int knn_k) {
    NormParams norm = fit_normalizer(train);
    Dataset tr = apply_normalizer(norm, train);
    Dataset te = apply_normalizer(norm, test);

    int max_dim = *std::max_element(dims.begin(), dims.end());

    ProjectionMatrix w;
    switch (method) {
    case Method::Raw:
        w = identity_projection(tr.d(), static_cast<std::size_t>(max_dim));
        break;
    case Method::Pca:
        w = pca_fit(tr, max_dim);
        break;
    case Method::Lda:
        w = lda_fit(tr, max_dim);
        break;
    case Method::Mifx: {
        ExtractionConfig ecfg = cfg;
        ecfg.t = max_dim;
        w = extract(tr, ecfg, fold_seed).projection;
        break;
    }
    }

    Dataset tr_all = project(w, tr);
    Dataset te_all = project(w, te);

    std::vector<double> out;
    out.reserve(dims.size());
    for (int dim : dims) {
        Dataset tr_dim = project(identity_projection(tr_all.d(),
                                                     static_cast<std::size_t>(dim)),
                                 tr_all);
        Dataset te_dim = project(identity_projection(te_all.d(),
                                                     static_cast<std::size_t>(dim)),
                                 te_all);
        auto pred = knn_classify(tr_dim, te_dim, knn_k);
        out.push_back(accuracy(pred, te_dim.labels));
    }
    return out;
}

} // namespace

EvaluationReport cross_validate(const Dataset& data, Method method,
                                const std::vector<int>& dims,
                                const ExtractionConfig& cfg,
                                const CrossValidateOptions& opts) {
    if (dims.empty()) throw DataError("no dims requested");
    for (int dim : dims)
        if (dim < 1 || static_cast<std::size_t>(dim) > data.d())
            throw DataError("dim " + std::to_string(dim) + " out of [1, d]");

    // LDA can only produce C-1 directions; infeasible dims are reported
    // absent, mirroring the dash cells of the reference tables.
    std::vector<int> feasible = dims;
    if (method == Method::Lda) {
        feasible.clear();
        for (int dim : dims)
            if (dim <= data.n_classes - 1) feasible.push_back(dim);
        if (feasible.empty())
            throw DataError("lda: no requested dim is <= C-1 = " +
                            std::to_string(data.n_classes - 1));
    }

    FoldPlan plan = stratified_kfold(data, opts.folds, opts.seed, opts.stratified);

    std::vector<std::vector<double>> per_fold(static_cast<std::size_t>(opts.folds));
    auto run_fold = [&](int f) {
        Dataset train = subset(data, plan.train_indices(f));
        Dataset test = subset(data, plan.test_indices(f));
        per_fold[static_cast<std::size_t>(f)] =
            evaluate_fold(train, test, method, feasible, cfg,
                          mix_seed(opts.seed, static_cast<std::uint64_t>(f)),
                          opts.knn_k);
    };

    unsigned threads = opts.threads > 0 ? static_cast<unsigned>(opts.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
    if (threads <= 1) {
        for (int f = 0; f < opts.folds; ++f) run_fold(f);
    } else {
        // Fold seeds derive from (seed, fold), so execution order is
        // irrelevant to the result.
        for (int base = 0; base < opts.folds; base += static_cast<int>(threads)) {
            std::vector<std::future<void>> batch;
            for (int f = base; f < std::min(opts.folds, base + static_cast<int>(threads)); ++f)
                batch.push_back(std::async(std::launch::async, run_fold, f));
            for (auto& fut : batch) fut.get();
        }
    }

    EvaluationReport report;
    report.dataset_name = opts.dataset_name;
    report.method = method_name(method);
    report.classifier = "knn-" + std::to_string(opts.knn_k);
    report.dims_evaluated = feasible;
    report.seed = opts.seed;
    report.config_digest = opts.config_digest;
    for (std::size_t i = 0; i < feasible.size(); ++i) {
        std::vector<double> row(static_cast<std::size_t>(opts.folds));
        double sum = 0.0;
        for (int f = 0; f < opts.folds; ++f) {
            row[static_cast<std::size_t>(f)] = per_fold[static_cast<std::size_t>(f)][i];
            sum += row[static_cast<std::size_t>(f)];
        }
        report.fold_accuracies.push_back(std::move(row));
        report.mean_accuracy.push_back(sum / static_cast<double>(opts.folds));
    }
    report.validate();
    return report;
}

namespace {

std::string format_cell(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

const char* kMethodOrder[] = {"raw", "pca", "lda", "mifx"};

} // namespace

std::string render_table(const std::vector<EvaluationReport>& reports,
                         TableFormat format, const ReferenceColumns* references) {
    if (reports.empty()) throw DataError("no reports to render");
    for (const auto& r : reports) {
        if (r.dataset_name != reports[0].dataset_name ||
            r.classifier != reports[0].classifier)
            throw DataError("reports disagree on dataset or classifier");
    }

    // Deterministic column order: raw, pca, lda, mifx, then references.
    std::vector<const EvaluationReport*> ordered;
    for (const char* name : kMethodOrder)
        for (const auto& r : reports)
            if (r.method == name) ordered.push_back(&r);
    if (ordered.size() != reports.size())
        throw DataError("duplicate or unknown method among reports");

    std::vector<int> all_dims;
    for (const auto& r : reports)
        all_dims.insert(all_dims.end(), r.dims_evaluated.begin(),
                        r.dims_evaluated.end());
    if (references)
        for (const auto& [dim, vals] : references->values) all_dims.push_back(dim);
    std::sort(all_dims.begin(), all_dims.end());
    all_dims.erase(std::unique(all_dims.begin(), all_dims.end()), all_dims.end());

    auto cell_for = [](const EvaluationReport& r, int dim) -> std::string {
        for (std::size_t i = 0; i < r.dims_evaluated.size(); ++i)
            if (r.dims_evaluated[i] == dim) return format_cell(r.mean_accuracy[i]);
        return "-";
    };
    auto ref_cell = [&](int dim, std::size_t col) -> std::string {
        auto it = references->values.find(dim);
        if (it == references->values.end() || col >= it->second.size() ||
            std::isnan(it->second[col]))
            return "-";
        return format_cell(it->second[col]);
    };

    std::vector<std::string> headers = {"dim"};
    for (const auto* r : ordered) headers.push_back(r->method);
    if (references)
        for (const auto& name : references->names) headers.push_back(name);

    if (format == TableFormat::Json) {
        nlohmann::ordered_json doc;
        doc["dataset"] = reports[0].dataset_name;
        doc["classifier"] = reports[0].classifier;
        doc["dims"] = all_dims;
        nlohmann::ordered_json cols;
        for (const auto* r : ordered) {
            nlohmann::ordered_json col = nlohmann::json::array();
            for (int dim : all_dims) {
                std::string cell = cell_for(*r, dim);
                if (cell == "-")
                    col.push_back(nullptr);
                else
                    col.push_back(std::stod(cell));
            }
            cols[r->method] = col;
        }
        if (references) {
            for (std::size_t c = 0; c < references->names.size(); ++c) {
                nlohmann::ordered_json col = nlohmann::json::array();
                for (int dim : all_dims) {
                    std::string cell = ref_cell(dim, c);
                    if (cell == "-")
                        col.push_back(nullptr);
                    else
                        col.push_back(std::stod(cell));
                }
                cols[references->names[c]] = col;
            }
        }
        doc["columns"] = cols;
        return doc.dump(2) + "\n";
    }

    std::ostringstream out;
    const bool markdown = format == TableFormat::Markdown;
    auto emit_row = [&](const std::vector<std::string>& cells) {
        if (markdown) {
            out << '|';
            for (const auto& cell : cells) out << ' ' << cell << " |";
            out << '\n';
        } else {
            for (std::size_t i = 0; i < cells.size(); ++i)
                out << cells[i] << (i + 1 < cells.size() ? "," : "");
            out << '\n';
        }
    };
    emit_row(headers);
    if (markdown) {
        std::vector<std::string> sep(headers.size(), "---");
        emit_row(sep);
    }
    for (int dim : all_dims) {
        std::vector<std::string> cells = {std::to_string(dim)};
        for (const auto* r : ordered) cells.push_back(cell_for(*r, dim));
        if (references)
            for (std::size_t c = 0; c < references->names.size(); ++c)
                cells.push_back(ref_cell(dim, c));
        emit_row(cells);
    }
    return out.str();
}

} // namespace mifx
