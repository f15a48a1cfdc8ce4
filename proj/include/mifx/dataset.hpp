#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mifx {

// Sample matrix (row-major, n x d) with contiguous integer class labels.
struct Dataset {
    std::vector<double> features;           // n*d, row-major
    std::vector<int> labels;                // length n, values in [0, n_classes)
    int n_classes = 0;
    std::size_t n_features = 0;
    std::vector<std::string> feature_names; // empty when the file had no header

    std::size_t n() const { return labels.size(); }
    std::size_t d() const { return n_features; }

    double at(std::size_t row, std::size_t col) const {
        return features[row * n_features + col];
    }
    double& at(std::size_t row, std::size_t col) {
        return features[row * n_features + col];
    }

    std::vector<double> column(std::size_t col) const;

    // Throws DataError if any invariant is violated (non-finite values,
    // labels out of range, missing classes, n < 2).
    void validate() const;
};

// Per-feature absolute maxima of a training split; divisor 1.0 stands in
// for all-zero columns.
struct NormParams {
    std::vector<double> per_feature_abs_max;
};

// Stratified k-fold assignment, deterministic given seed.
struct FoldPlan {
    int k = 0;
    std::vector<int> assignments; // length n, values in [0, k)
    std::uint64_t seed = 0;

    std::vector<std::size_t> test_indices(int fold) const;
    std::vector<std::size_t> train_indices(int fold) const;
};

// Which column of the CSV holds the class label.
struct LabelColumn {
    enum class Kind { Index, Name, Last };
    Kind kind = Kind::Last;
    std::size_t index = 0;
    std::string name;

    static LabelColumn parse(const std::string& spec);
};

Dataset load_csv(const std::string& path, const LabelColumn& label, bool header);
void save_csv(const Dataset& data, const std::string& path);

NormParams fit_normalizer(const Dataset& train);
Dataset apply_normalizer(const NormParams& params, const Dataset& data);

FoldPlan stratified_kfold(const Dataset& data, int k, std::uint64_t seed,
                          bool stratified = true);

Dataset subset(const Dataset& data, const std::vector<std::size_t>& rows);

} // namespace mifx
