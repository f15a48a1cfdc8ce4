// Deterministic synthetic datasets shared by the test suites.
#pragma once

#include <random>

#include "mifx/dataset.hpp"

namespace synth {

// Two Gaussian classes with means +/- (sep, 0, ..., 0), identity covariance.
inline mifx::Dataset two_gaussians(std::size_t n_per_class, std::size_t d, double sep,
                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    mifx::Dataset data;
    data.n_features = d;
    data.n_classes = 2;
    for (int c = 0; c < 2; ++c) {
        double mean = c == 0 ? sep : -sep;
        for (std::size_t i = 0; i < n_per_class; ++i) {
            for (std::size_t j = 0; j < d; ++j)
                data.features.push_back(normal(rng) + (j == 0 ? mean : 0.0));
            data.labels.push_back(c);
        }
    }
    return data;
}

inline mifx::Dataset random_dataset(std::size_t n, std::size_t d, int classes,
                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<int> lab(0, classes - 1);
    mifx::Dataset data;
    data.n_features = d;
    data.n_classes = classes;
    bool any_missing = true;
    while (any_missing) {
        data.features.clear();
        data.labels.clear();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) data.features.push_back(normal(rng));
            data.labels.push_back(lab(rng));
        }
        std::vector<int> counts(static_cast<std::size_t>(classes), 0);
        for (int c : data.labels) ++counts[static_cast<std::size_t>(c)];
        any_missing = false;
        for (int c : counts) any_missing = any_missing || c < 2;
    }
    return data;
}

} // namespace synth
