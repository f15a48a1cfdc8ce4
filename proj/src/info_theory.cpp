#include "mifx/info_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mifx/errors.hpp"

namespace mifx {

namespace {

// Sums per-cell contributions in sorted order so the result is independent
// of cell iteration order; this is what makes mi_cc(x,y) == mi_cc(y,x)
// bit-exact and mi_cc(y,y) identical to entropy_binned(y).
double sorted_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

double to_base(double nats, LogBase base) {
    return base == LogBase::Two ? nats / std::log(2.0) : nats;
}

void range_of(const std::vector<double>& values, const HistogramConfig& cfg,
              double& lo, double& hi) {
    if (cfg.range_policy == RangePolicy::Fixed) {
        lo = cfg.fixed_lo;
        hi = cfg.fixed_hi;
        return;
    }
    lo = values[0];
    hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi) { // constant input: any single bin works
        lo -= 0.5;
        hi += 0.5;
    }
}

} // namespace

void HistogramConfig::validate() const {
    if (n_bins < 2) throw DataError("n_bins must be at least 2");
    if (range_policy == RangePolicy::Fixed && !(fixed_lo < fixed_hi))
        throw DataError("fixed histogram range requires lo < hi");
}

BinAssignment bin_indices(const std::vector<double>& values,
                          const HistogramConfig& cfg) {
    if (values.empty()) throw DataError("cannot bin an empty value list");
    cfg.validate();
    for (double v : values)
        if (!std::isfinite(v)) throw NumericError("non-finite value in histogram input");

    double lo, hi;
    range_of(values, cfg, lo, hi);
    const double span = hi - lo;
    const int nb = cfg.n_bins;

    BinAssignment out;
    out.n_bins = nb;
    out.indices.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        int idx = static_cast<int>((values[i] - lo) / span * nb);
        if (idx >= nb) idx = nb - 1; // top edge inclusive
        if (idx < 0) idx = 0;        // fixed-range underflow clamps
        out.indices[i] = idx;
    }
    return out;
}

Histogram bin_1d(const std::vector<double>& values, const HistogramConfig& cfg) {
    auto assign = bin_indices(values, cfg);
    double lo, hi;
    range_of(values, cfg, lo, hi);

    Histogram h;
    h.total = values.size();
    h.counts.assign(static_cast<std::size_t>(assign.n_bins), 0);
    for (int idx : assign.indices) ++h.counts[static_cast<std::size_t>(idx)];
    h.bin_edges.resize(static_cast<std::size_t>(assign.n_bins) + 1);
    for (int j = 0; j <= assign.n_bins; ++j)
        h.bin_edges[static_cast<std::size_t>(j)] =
            lo + (hi - lo) * static_cast<double>(j) / assign.n_bins;
    return h;
}

double entropy_discrete(const std::vector<int>& labels, LogBase base) {
    if (labels.empty()) throw DataError("entropy of an empty label list");
    int max_label = 0;
    for (int c : labels) {
        if (c < 0) throw DataError("negative class label");
        max_label = std::max(max_label, c);
    }
    std::vector<std::size_t> counts(static_cast<std::size_t>(max_label) + 1, 0);
    for (int c : labels) ++counts[static_cast<std::size_t>(c)];

    const double n = static_cast<double>(labels.size());
    std::vector<double> terms;
    for (std::size_t cnt : counts) {
        if (cnt == 0) continue; // 0*log 0 := 0
        double p = static_cast<double>(cnt) / n;
        terms.push_back(p * std::log(n / static_cast<double>(cnt)));
    }
    double h = sorted_sum(terms);
    return to_base(std::max(h, 0.0), base);
}

namespace detail {

double entropy_from_indices(const std::vector<int>& xi, int nx,
                            const HistogramConfig& cfg) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(nx), 0);
    for (int i : xi) ++counts[static_cast<std::size_t>(i)];
    const double n = static_cast<double>(xi.size());

    std::vector<double> terms;
    int occupied = 0;
    for (std::size_t cnt : counts) {
        if (cnt == 0) continue;
        ++occupied;
        double p = static_cast<double>(cnt) / n;
        terms.push_back(p * std::log(n / static_cast<double>(cnt)));
    }
    double h = sorted_sum(terms);
    if (cfg.bias_correction) h += static_cast<double>(occupied - 1) / (2.0 * n);
    return to_base(std::max(h, 0.0), cfg.log_base);
}

double mi_from_indices(const std::vector<int>& xi, int nx, const std::vector<int>& yi,
                       int ny, const HistogramConfig& cfg) {
    if (xi.size() != yi.size())
        throw DataError("MI inputs have mismatched lengths");
    const std::size_t n = xi.size();
    if (n < 2) throw DataError("MI needs at least 2 samples");

    std::vector<std::size_t> joint(static_cast<std::size_t>(nx) *
                                       static_cast<std::size_t>(ny),
                                   0);
    std::vector<std::size_t> mx(static_cast<std::size_t>(nx), 0);
    std::vector<std::size_t> my(static_cast<std::size_t>(ny), 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto a = static_cast<std::size_t>(xi[i]);
        auto b = static_cast<std::size_t>(yi[i]);
        ++joint[a * static_cast<std::size_t>(ny) + b];
        ++mx[a];
        ++my[b];
    }

    const double dn = static_cast<double>(n);
    std::vector<double> terms;
    int occ_x = 0, occ_y = 0;
    for (std::size_t c : mx) occ_x += c > 0;
    for (std::size_t c : my) occ_y += c > 0;
    for (int a = 0; a < nx; ++a) {
        if (mx[static_cast<std::size_t>(a)] == 0) continue;
        for (int b = 0; b < ny; ++b) {
            std::size_t njk =
                joint[static_cast<std::size_t>(a) * static_cast<std::size_t>(ny) +
                      static_cast<std::size_t>(b)];
            if (njk == 0) continue;
            double p = static_cast<double>(njk) / dn;
            double arg = (dn * static_cast<double>(njk)) /
                         (static_cast<double>(mx[static_cast<std::size_t>(a)]) *
                          static_cast<double>(my[static_cast<std::size_t>(b)]));
            terms.push_back(p * std::log(arg));
        }
    }
    double mi = sorted_sum(terms);
    if (cfg.bias_correction)
        mi -= static_cast<double>((occ_x - 1) * (occ_y - 1)) / (2.0 * dn);
    return to_base(std::max(mi, 0.0), cfg.log_base);
}

} // namespace detail

double entropy_binned(const std::vector<double>& values, const HistogramConfig& cfg) {
    auto assign = bin_indices(values, cfg);
    return detail::entropy_from_indices(assign.indices, assign.n_bins, cfg);
}

double mi_cd(const std::vector<double>& values, const std::vector<int>& labels,
             const HistogramConfig& cfg) {
    if (values.size() != labels.size())
        throw DataError("values and labels have mismatched lengths");
    auto assign = bin_indices(values, cfg);
    int max_label = 0;
    for (int c : labels) {
        if (c < 0) throw DataError("negative class label");
        max_label = std::max(max_label, c);
    }
    return detail::mi_from_indices(assign.indices, assign.n_bins, labels,
                                   max_label + 1, cfg);
}

double mi_cc(const std::vector<double>& x, const std::vector<double>& y,
             const HistogramConfig& cfg) {
    if (x.size() != y.size()) throw DataError("x and y have mismatched lengths");
    auto ax = bin_indices(x, cfg);
    auto ay = bin_indices(y, cfg);
    return detail::mi_from_indices(ax.indices, ax.n_bins, ay.indices, ay.n_bins, cfg);
}

double mi_2d_cd(const std::vector<double>& x1, const std::vector<double>& x2,
                const std::vector<int>& labels, const HistogramConfig& cfg) {
    if (x1.size() != x2.size() || x1.size() != labels.size())
        throw DataError("mi_2d_cd inputs have mismatched lengths");
    auto a1 = bin_indices(x1, cfg);
    auto a2 = bin_indices(x2, cfg);
    std::vector<int> pair(x1.size());
    for (std::size_t i = 0; i < pair.size(); ++i)
        pair[i] = a1.indices[i] * a2.n_bins + a2.indices[i];
    int max_label = 0;
    for (int c : labels) {
        if (c < 0) throw DataError("negative class label");
        max_label = std::max(max_label, c);
    }
    return detail::mi_from_indices(pair, a1.n_bins * a2.n_bins, labels, max_label + 1,
                                   cfg);
}

BayesErrorBounds bayes_error_bounds(double h_class, double mi, int n_classes) {
    if (h_class < 0 || mi < 0) throw DataError("entropy and MI must be nonnegative");
    if (n_classes < 2) throw DataError("need at least 2 classes");
    auto clamp01 = [](double v) { return std::min(1.0, std::max(0.0, v)); };
    BayesErrorBounds b;
    b.upper = clamp01((h_class - mi) / 2.0);
    b.lower = clamp01((h_class - mi - 1.0) / std::log2(static_cast<double>(n_classes)));
    return b;
}

} // namespace mifx
