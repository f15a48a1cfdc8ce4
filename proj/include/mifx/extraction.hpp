#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mifx/dataset.hpp"
#include "mifx/info_theory.hpp"

namespace mifx {

// Ordered list of d-dimensional unit-norm projection vectors.
struct ProjectionMatrix {
    std::size_t d = 0;
    std::vector<std::vector<double>> vectors; // row per component, extraction order
    std::string method_tag = "mifx";          // mifx | pca | lda

    std::size_t t() const { return vectors.size(); }
    ProjectionMatrix head(std::size_t count) const;
    void validate() const;
};

struct GaConfig {
    int population = 60;
    int generations = 120;
    int tournament_size = 3;
    double crossover_prob = 0.9;
    double blend_alpha = 0.5;
    double mutation_sigma = 0.15;
    double mutation_prob = -1.0; // < 0 means 1/d
    int elites = 2;
    int restarts = 3;
    // Optional finite-difference hill-climb refinement after the GA.
    bool refine = false;

    void validate() const;
};

struct ExtractionConfig {
    int t = 1;
    HistogramConfig hist;
    GaConfig ga;
    double entropy_floor = 1e-6;
};

// Per-component record of the extraction run.
struct ComponentDiagnostics {
    double relevance = 0.0;
    double penalty = 0.0;
    double objective = 0.0;
};

struct ExtractionResult {
    ProjectionMatrix projection;
    std::vector<ComponentDiagnostics> diagnostics;
};

Dataset project(const ProjectionMatrix& w, const Dataset& x);

double relevance(const std::vector<double>& w, const Dataset& x,
                 const ExtractionConfig& cfg);

double redundancy_penalty(const std::vector<double>& w, const ProjectionMatrix& ws,
                          const Dataset& x, const ExtractionConfig& cfg);

double objective(const std::vector<double>& w, const ProjectionMatrix& ws,
                 const Dataset& x, const ExtractionConfig& cfg);

struct GaResult {
    std::vector<double> best;
    double fitness = 0.0;
};

// Maximizes `fitness` over unit vectors in R^d; deterministic given seed.
GaResult ga_optimize(const std::function<double(const std::vector<double>&)>& fitness,
                     std::size_t d, const GaConfig& ga, std::uint64_t seed);

ExtractionResult extract(const Dataset& x, const ExtractionConfig& cfg,
                         std::uint64_t seed);

} // namespace mifx
