#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mifx/dataset.hpp"
#include "mifx/extraction.hpp"

namespace mifx {

enum class Method { Raw, Pca, Lda, Mifx };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct EvaluationReport {
    std::string dataset_name;
    std::string method;
    std::string classifier = "knn-1";
    std::vector<int> dims_evaluated;
    std::vector<std::vector<double>> fold_accuracies; // [dim][fold], percentages
    std::vector<double> mean_accuracy;                // per dim
    std::uint64_t seed = 0;
    std::string config_digest;

    void validate() const;
};

std::vector<int> knn_classify(const Dataset& train, const Dataset& test, int k);

double accuracy(const std::vector<int>& predicted, const std::vector<int>& actual);

struct CrossValidateOptions {
    int folds = 10;
    std::uint64_t seed = 42;
    int threads = 0; // 0: hardware concurrency
    bool stratified = true;
    int knn_k = 1;
    std::string dataset_name;
    std::string config_digest;
};

EvaluationReport cross_validate(const Dataset& data, Method method,
                                const std::vector<int>& dims,
                                const ExtractionConfig& cfg,
                                const CrossValidateOptions& opts);

// Paper-style reference values appended as extra table columns.
struct ReferenceColumns {
    std::vector<std::string> names;
    std::map<int, std::vector<double>> values; // dim -> one value per name (NaN: absent)
};

enum class TableFormat { Markdown, Csv, Json };

std::string render_table(const std::vector<EvaluationReport>& reports,
                         TableFormat format,
                         const ReferenceColumns* references = nullptr);

} // namespace mifx
