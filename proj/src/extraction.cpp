#include "mifx/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mifx/errors.hpp"
#include "mifx/rng.hpp"

namespace mifx {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void project_into(const std::vector<double>& w, const Dataset& x,
                  std::vector<double>& out) {
    const std::size_t n = x.n(), d = x.d();
    out.resize(n);
    const double* f = x.features.data();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        const double* row = f + i * d;
        for (std::size_t j = 0; j < d; ++j) acc += w[j] * row[j];
        out[i] = acc;
    }
}

std::vector<double> sample_unit_vector(std::size_t d, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> v(d);
    for (;;) {
        for (double& x : v) x = normal(rng);
        double nrm = norm2(v);
        if (nrm > 1e-12) {
            for (double& x : v) x /= nrm;
            return v;
        }
    }
}

// Normalize in place; degenerate candidates are re-sampled from the sphere.
void normalize_or_resample(std::vector<double>& v, Rng& rng) {
    double nrm = norm2(v);
    if (nrm > 1e-12) {
        for (double& x : v) x /= nrm;
    } else {
        v = sample_unit_vector(v.size(), rng);
    }
}

// Cached per-previous-component quantities for the redundancy term.
struct PriorComponent {
    BinAssignment bins;
    double mi_with_class = 0.0;
    double entropy = 0.0;
};

} // namespace

ProjectionMatrix ProjectionMatrix::head(std::size_t count) const {
    ProjectionMatrix out;
    out.d = d;
    out.method_tag = method_tag;
    out.vectors.assign(vectors.begin(),
                       vectors.begin() + static_cast<std::ptrdiff_t>(
                                             std::min(count, vectors.size())));
    return out;
}

void ProjectionMatrix::validate() const {
    if (vectors.empty()) throw DataError("projection matrix has no components");
    for (const auto& v : vectors) {
        if (v.size() != d) throw DataError("projection vector dimension mismatch");
        if (std::abs(norm2(v) - 1.0) > 1e-9)
            throw NumericError("projection vector is not unit-norm");
    }
}

void GaConfig::validate() const {
    if (population < 1) throw DataError("GA population must be positive");
    if (generations < 1) throw DataError("GA generations must be positive");
    if (tournament_size < 2 || tournament_size > population)
        throw DataError("tournament size must be in [2, population]");
    if (crossover_prob < 0.0 || crossover_prob > 1.0)
        throw DataError("crossover probability must be in [0,1]");
    if (blend_alpha <= 0.0) throw DataError("blend alpha must be positive");
    if (mutation_sigma <= 0.0) throw DataError("mutation sigma must be positive");
    if (elites < 0 || elites >= population)
        throw DataError("elite count must be in [0, population)");
    if (restarts < 1) throw DataError("restart count must be positive");
}

Dataset project(const ProjectionMatrix& w, const Dataset& x) {
    if (w.d != x.d())
        throw DataError("projection dimension " + std::to_string(w.d) +
                        " does not match data dimension " + std::to_string(x.d()));
    Dataset out;
    out.n_features = w.t();
    out.labels = x.labels;
    out.n_classes = x.n_classes;
    out.features.resize(x.n() * w.t());
    std::vector<double> col;
    for (std::size_t k = 0; k < w.t(); ++k) {
        project_into(w.vectors[k], x, col);
        for (std::size_t i = 0; i < x.n(); ++i) out.at(i, k) = col[i];
    }
    return out;
}

double relevance(const std::vector<double>& w, const Dataset& x,
                 const ExtractionConfig& cfg) {
    if (w.size() != x.d()) throw DataError("weight vector dimension mismatch");
    if (norm2(w) == 0.0) throw DataError("weight vector is zero");
    std::vector<double> y;
    project_into(w, x, y);
    return mi_cd(y, x.labels, cfg.hist);
}

double redundancy_penalty(const std::vector<double>& w, const ProjectionMatrix& ws,
                          const Dataset& x, const ExtractionConfig& cfg) {
    if (w.size() != x.d()) throw DataError("weight vector dimension mismatch");
    if (ws.t() == 0) return 0.0;
    std::vector<double> y, ys;
    project_into(w, x, y);
    double penalty = 0.0;
    for (const auto& prev : ws.vectors) {
        if (prev.size() != x.d())
            throw DataError("previous component dimension mismatch");
        project_into(prev, x, ys);
        double h = entropy_binned(ys, cfg.hist);
        if (h < cfg.entropy_floor) continue; // constant feature: 0/0 summand is 0
        penalty += mi_cc(y, ys, cfg.hist) * mi_cd(ys, x.labels, cfg.hist) / h;
    }
    return penalty;
}

double objective(const std::vector<double>& w, const ProjectionMatrix& ws,
                 const Dataset& x, const ExtractionConfig& cfg) {
    return relevance(w, x, cfg) - redundancy_penalty(w, ws, x, cfg);
}

GaResult ga_optimize(const std::function<double(const std::vector<double>&)>& fitness,
                     std::size_t d, const GaConfig& ga, std::uint64_t seed) {
    if (d < 1) throw DataError("dimension must be at least 1");
    ga.validate();
    const std::size_t pop_size = static_cast<std::size_t>(ga.population);

    GaResult best;
    best.fitness = -std::numeric_limits<double>::infinity();
    auto consider = [&best](const std::vector<double>& v, double f) {
        if (f > best.fitness) {
            best.fitness = f;
            best.best = v;
        }
    };

    for (int r = 0; r < ga.restarts; ++r) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::uniform_int_distribution<std::size_t> pick(0, pop_size - 1);
        const double p_mut =
            ga.mutation_prob >= 0.0 ? ga.mutation_prob : 1.0 / static_cast<double>(d);

        std::vector<std::vector<double>> pop(pop_size);
        for (auto& v : pop) v = sample_unit_vector(d, rng);
        if (r == 0) {
            // Axis-aligned solutions are common in tabular data; seed them.
            for (std::size_t j = 0; j < std::min(d, pop_size); ++j) {
                pop[j].assign(d, 0.0);
                pop[j][j] = 1.0;
            }
        }
        std::vector<double> fit(pop_size);
        for (std::size_t i = 0; i < pop_size; ++i) {
            fit[i] = fitness(pop[i]);
            consider(pop[i], fit[i]);
        }

        auto tournament = [&]() -> std::size_t {
            std::size_t winner = pick(rng);
            for (int t = 1; t < ga.tournament_size; ++t) {
                std::size_t challenger = pick(rng);
                if (fit[challenger] > fit[winner]) winner = challenger;
            }
            return winner;
        };

        std::vector<std::size_t> order(pop_size);
        for (int g = 0; g < ga.generations; ++g) {
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return fit[a] > fit[b];
            });

            std::vector<std::vector<double>> next;
            next.reserve(pop_size);
            for (int e = 0; e < ga.elites; ++e)
                next.push_back(pop[order[static_cast<std::size_t>(e)]]);

            while (next.size() < pop_size) {
                const auto& p1 = pop[tournament()];
                const auto& p2 = pop[tournament()];
                std::vector<double> child(d);
                if (unif(rng) < ga.crossover_prob) {
                    // BLX-alpha blend crossover, gene-wise
                    for (std::size_t j = 0; j < d; ++j) {
                        double lo = std::min(p1[j], p2[j]);
                        double hi = std::max(p1[j], p2[j]);
                        double span = hi - lo;
                        std::uniform_real_distribution<double> blend(
                            lo - ga.blend_alpha * span, hi + ga.blend_alpha * span);
                        child[j] = span > 0.0 ? blend(rng) : lo;
                    }
                } else {
                    child = p1;
                }
                for (std::size_t j = 0; j < d; ++j)
                    if (unif(rng) < p_mut) child[j] += ga.mutation_sigma * normal(rng);
                normalize_or_resample(child, rng);
                next.push_back(std::move(child));
            }

            pop = std::move(next);
            for (std::size_t i = 0; i < pop_size; ++i) {
                fit[i] = fitness(pop[i]);
                consider(pop[i], fit[i]);
            }
        }

        if (ga.refine) {
            // Finite-difference hill climb around the restart's best point.
            std::vector<double> cur = best.best;
            double cur_fit = best.fitness;
            double step = 0.05;
            while (step > 1e-4) {
                bool improved = false;
                for (std::size_t j = 0; j < d; ++j) {
                    for (double sgn : {1.0, -1.0}) {
                        std::vector<double> cand = cur;
                        cand[j] += sgn * step;
                        normalize_or_resample(cand, rng);
                        double f = fitness(cand);
                        if (f > cur_fit) {
                            cur = cand;
                            cur_fit = f;
                            improved = true;
                        }
                    }
                }
                if (!improved) step *= 0.5;
            }
            consider(cur, cur_fit);
        }
    }
    return best;
}

ExtractionResult extract(const Dataset& x, const ExtractionConfig& cfg,
                         std::uint64_t seed) {
    if (cfg.t < 1 || static_cast<std::size_t>(cfg.t) > x.d())
        throw DataError("t must be in [1, d]; got t=" + std::to_string(cfg.t) +
                        " with d=" + std::to_string(x.d()));
    if (x.n_classes < 2) throw DataError("extraction needs at least 2 classes");
    cfg.hist.validate();
    cfg.ga.validate();

    ExtractionResult result;
    result.projection.d = x.d();
    result.projection.method_tag = "mifx";

    std::vector<PriorComponent> priors;
    std::vector<double> y; // projection buffer, reused across evaluations

    for (int comp = 0; comp < cfg.t; ++comp) {
        auto fitness = [&](const std::vector<double>& w) {
            project_into(w, x, y);
            auto yb = bin_indices(y, cfg.hist);
            double score = detail::mi_from_indices(yb.indices, yb.n_bins, x.labels,
                                                   x.n_classes, cfg.hist);
            for (const auto& prev : priors) {
                if (prev.entropy < cfg.entropy_floor) continue;
                double shared = detail::mi_from_indices(
                    yb.indices, yb.n_bins, prev.bins.indices, prev.bins.n_bins, cfg.hist);
                score -= shared * prev.mi_with_class / prev.entropy;
            }
            return score;
        };

        GaResult ga = ga_optimize(fitness, x.d(), cfg.ga,
                                  mix_seed(seed, static_cast<std::uint64_t>(comp)));

        ComponentDiagnostics diag;
        diag.relevance = relevance(ga.best, x, cfg);
        diag.penalty = redundancy_penalty(ga.best, result.projection, x, cfg);
        diag.objective = diag.relevance - diag.penalty;
        result.diagnostics.push_back(diag);

        PriorComponent prior;
        project_into(ga.best, x, y);
        prior.bins = bin_indices(y, cfg.hist);
        prior.mi_with_class = detail::mi_from_indices(prior.bins.indices,
                                                      prior.bins.n_bins, x.labels,
                                                      x.n_classes, cfg.hist);
        prior.entropy =
            detail::entropy_from_indices(prior.bins.indices, prior.bins.n_bins, cfg.hist);
        priors.push_back(std::move(prior));

        result.projection.vectors.push_back(std::move(ga.best));
    }
    return result;
}

} // namespace mifx
