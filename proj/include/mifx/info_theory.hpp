#pragma once

#include <cstddef>
#include <vector>

namespace mifx {

enum class LogBase { Two, E };

enum class RangePolicy { DataMinMax, Fixed };

struct HistogramConfig {
    int n_bins = 32;
    RangePolicy range_policy = RangePolicy::DataMinMax;
    double fixed_lo = 0.0;
    double fixed_hi = 1.0;
    LogBase log_base = LogBase::Two;
    // Moddemeijer-style (histogram-cell count) bias correction; off by
    // default so the plug-in nonnegativity/symmetry invariants hold exactly.
    bool bias_correction = false;

    void validate() const;
};

// Binned empirical distribution of one real variable.
struct Histogram {
    std::vector<double> bin_edges;   // n_bins + 1, strictly increasing
    std::vector<std::size_t> counts; // per bin
    std::size_t total = 0;
};

// Bin index per sample plus the number of bins actually used. Constant
// input collapses to a single occupied bin.
struct BinAssignment {
    std::vector<int> indices;
    int n_bins = 0;
};

BinAssignment bin_indices(const std::vector<double>& values, const HistogramConfig& cfg);

Histogram bin_1d(const std::vector<double>& values, const HistogramConfig& cfg);

double entropy_discrete(const std::vector<int>& labels, LogBase base = LogBase::Two);

double entropy_binned(const std::vector<double>& values, const HistogramConfig& cfg);

// Plug-in MI between a binned continuous variable and discrete class labels.
double mi_cd(const std::vector<double>& values, const std::vector<int>& labels,
             const HistogramConfig& cfg);

// Plug-in MI between two binned continuous variables (axes binned
// independently). Bit-exactly symmetric in its arguments.
double mi_cc(const std::vector<double>& x, const std::vector<double>& y,
             const HistogramConfig& cfg);

// 2-D diagnostic: MI between the joint (bin(x1), bin(x2)) pair and labels.
double mi_2d_cd(const std::vector<double>& x1, const std::vector<double>& x2,
                const std::vector<int>& labels, const HistogramConfig& cfg);

struct BayesErrorBounds {
    double lower = 0.0;
    double upper = 1.0;
};

// Fano lower / Hellman-Raviv upper bounds on Bayes error, in bits,
// clamped to [0, 1].
BayesErrorBounds bayes_error_bounds(double h_class, double mi, int n_classes);

// Internal building blocks, exposed for reuse by the extraction module.
namespace detail {
double mi_from_indices(const std::vector<int>& xi, int nx, const std::vector<int>& yi,
                       int ny, const HistogramConfig& cfg);
double entropy_from_indices(const std::vector<int>& xi, int nx,
                            const HistogramConfig& cfg);
} // namespace detail

} // namespace mifx
