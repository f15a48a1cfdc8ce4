#include "mifx/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "mifx/errors.hpp"
#include "mifx/rng.hpp"

namespace mifx {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

} // namespace

std::vector<double> Dataset::column(std::size_t col) const {
    std::vector<double> out(n());
    for (std::size_t i = 0; i < n(); ++i) out[i] = at(i, col);
    return out;
}

void Dataset::validate() const {
    if (n() < 2) throw DataError("dataset needs at least 2 samples");
    if (n_features < 1) throw DataError("dataset needs at least 1 feature");
    if (n_classes < 1) throw DataError("dataset has no classes");
    if (features.size() != n() * n_features)
        throw DataError("feature matrix shape does not match labels");
    std::vector<bool> seen(static_cast<std::size_t>(n_classes), false);
    for (int c : labels) {
        if (c < 0 || c >= n_classes)
            throw DataError("label " + std::to_string(c) + " out of range");
        seen[static_cast<std::size_t>(c)] = true;
    }
    for (int c = 0; c < n_classes; ++c)
        if (!seen[static_cast<std::size_t>(c)])
            throw DataError("class " + std::to_string(c) + " has no samples");
    for (double v : features)
        if (!std::isfinite(v)) throw DataError("non-finite feature value");
}

LabelColumn LabelColumn::parse(const std::string& spec) {
    LabelColumn lc;
    if (spec == "last") {
        lc.kind = Kind::Last;
        return lc;
    }
    if (!spec.empty() &&
        std::all_of(spec.begin(), spec.end(),
                    [](unsigned char ch) { return std::isdigit(ch); })) {
        lc.kind = Kind::Index;
        lc.index = static_cast<std::size_t>(std::stoull(spec));
        return lc;
    }
    lc.kind = Kind::Name;
    lc.name = spec;
    return lc;
}

Dataset load_csv(const std::string& path, const LabelColumn& label, bool header) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);

    std::string line;
    std::vector<std::string> names;
    std::size_t n_cols = 0;
    std::size_t line_no = 0;

    if (header) {
        if (!std::getline(in, line)) throw DataError("empty file: " + path);
        ++line_no;
        names = split_line(line);
        n_cols = names.size();
    }

    std::size_t label_idx = 0;
    bool label_resolved = false;
    auto resolve_label = [&](std::size_t cols) {
        switch (label.kind) {
        case LabelColumn::Kind::Last:
            label_idx = cols - 1;
            break;
        case LabelColumn::Kind::Index:
            if (label.index >= cols)
                throw DataError("label column index " + std::to_string(label.index) +
                                " out of range (file has " + std::to_string(cols) +
                                " columns)");
            label_idx = label.index;
            break;
        case LabelColumn::Kind::Name: {
            auto it = std::find(names.begin(), names.end(), label.name);
            if (it == names.end())
                throw DataError("label column '" + label.name + "' not found in header");
            label_idx = static_cast<std::size_t>(it - names.begin());
            break;
        }
        }
        label_resolved = true;
    };
    if (header) resolve_label(n_cols);

    Dataset data;
    std::map<std::string, int> label_codes; // first-appearance order via counter
    std::vector<std::string> raw_labels;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_line(line);
        if (n_cols == 0) {
            n_cols = cells.size();
            if (n_cols < 2) throw DataError("need at least 2 columns, got " +
                                            std::to_string(n_cols));
            if (!label_resolved) resolve_label(n_cols);
        }
        if (cells.size() != n_cols)
            throw DataError("row " + std::to_string(line_no) + ": expected " +
                            std::to_string(n_cols) + " cells, got " +
                            std::to_string(cells.size()));
        for (std::size_t j = 0; j < n_cols; ++j) {
            if (j == label_idx) {
                raw_labels.push_back(cells[j]);
                continue;
            }
            double v;
            if (!parse_double(cells[j], v))
                throw DataError("row " + std::to_string(line_no) + ", column " +
                                std::to_string(j) + ": cannot parse '" + cells[j] +
                                "' as a finite number");
            data.features.push_back(v);
        }
    }
    if (raw_labels.empty()) throw DataError("no data rows in " + path);

    // Labels re-encoded to 0..C-1 in first-appearance order.
    int next_code = 0;
    data.labels.reserve(raw_labels.size());
    for (const auto& s : raw_labels) {
        auto it = label_codes.find(s);
        if (it == label_codes.end())
            it = label_codes.emplace(s, next_code++).first;
        data.labels.push_back(it->second);
    }
    data.n_classes = next_code;
    if (data.n_classes < 2)
        throw DataError("fewer than 2 classes in label column");
    data.n_features = n_cols - 1;

    if (!names.empty()) {
        for (std::size_t j = 0; j < n_cols; ++j)
            if (j != label_idx) data.feature_names.push_back(names[j]);
    }
    data.validate();
    return data;
}

void save_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    if (!data.feature_names.empty()) {
        for (const auto& name : data.feature_names) out << name << ',';
        out << "label\n";
    }
    char buf[64];
    for (std::size_t i = 0; i < data.n(); ++i) {
        for (std::size_t j = 0; j < data.d(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", data.at(i, j));
            out << buf << ',';
        }
        out << data.labels[i] << '\n';
    }
}

NormParams fit_normalizer(const Dataset& train) {
    if (train.n() == 0) throw DataError("cannot fit normalizer on empty dataset");
    NormParams params;
    params.per_feature_abs_max.assign(train.d(), 0.0);
    for (std::size_t i = 0; i < train.n(); ++i)
        for (std::size_t j = 0; j < train.d(); ++j)
            params.per_feature_abs_max[j] =
                std::max(params.per_feature_abs_max[j], std::abs(train.at(i, j)));
    for (double& m : params.per_feature_abs_max)
        if (m == 0.0) m = 1.0;
    return params;
}

Dataset apply_normalizer(const NormParams& params, const Dataset& data) {
    if (params.per_feature_abs_max.size() != data.d())
        throw DataError("normalizer dimension " +
                        std::to_string(params.per_feature_abs_max.size()) +
                        " does not match data dimension " + std::to_string(data.d()));
    Dataset out = data;
    for (std::size_t i = 0; i < out.n(); ++i)
        for (std::size_t j = 0; j < out.d(); ++j)
            out.at(i, j) /= params.per_feature_abs_max[j];
    return out;
}

FoldPlan stratified_kfold(const Dataset& data, int k, std::uint64_t seed,
                          bool stratified) {
    if (k < 2) throw DataError("fold count must be at least 2");
    if (static_cast<std::size_t>(k) > data.n())
        throw DataError("fold count " + std::to_string(k) + " exceeds sample count " +
                        std::to_string(data.n()));

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignments.assign(data.n(), -1);
    Rng rng(mix_seed(seed, 0x666f6c64)); // "fold"

    if (!stratified) {
        std::vector<std::size_t> order(data.n());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i = 0; i < order.size(); ++i)
            plan.assignments[order[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
        return plan;
    }

    // Deal each class's shuffled indices round-robin, carrying the fold
    // offset across classes so total fold sizes differ by at most 1.
    std::vector<std::vector<std::size_t>> by_class(
        static_cast<std::size_t>(data.n_classes));
    for (std::size_t i = 0; i < data.n(); ++i)
        by_class[static_cast<std::size_t>(data.labels[i])].push_back(i);

    int offset = 0;
    for (auto& idx : by_class) {
        std::shuffle(idx.begin(), idx.end(), rng);
        for (std::size_t i = 0; i < idx.size(); ++i)
            plan.assignments[idx[i]] =
                (offset + static_cast<int>(i % static_cast<std::size_t>(k))) % k;
        offset = (offset + static_cast<int>(idx.size() % static_cast<std::size_t>(k))) % k;
    }
    return plan;
}

std::vector<std::size_t> FoldPlan::test_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] == fold) out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldPlan::train_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] != fold) out.push_back(i);
    return out;
}

Dataset subset(const Dataset& data, const std::vector<std::size_t>& rows) {
    Dataset out;
    out.n_features = data.n_features;
    out.feature_names = data.feature_names;
    out.n_classes = data.n_classes;
    out.features.reserve(rows.size() * data.d());
    out.labels.reserve(rows.size());
    for (std::size_t r : rows) {
        for (std::size_t j = 0; j < data.d(); ++j)
            out.features.push_back(data.at(r, j));
        out.labels.push_back(data.labels[r]);
    }
    return out;
}

} // namespace mifx
