#include <doctest.h>

#include <random>

#include "mifx/errors.hpp"
#include "mifx/extraction.hpp"
#include "mifx/rng.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace mifx;

namespace {

// Small GA settings for tests that exercise wiring rather than search power.
GaConfig small_ga() {
    GaConfig ga;
    ga.population = 24;
    ga.generations = 30;
    ga.restarts = 1;
    return ga;
}

ExtractionConfig test_cfg(int t = 1) {
    ExtractionConfig cfg;
    cfg.t = t;
    cfg.ga = small_ga();
    return cfg;
}

std::vector<double> basis(std::size_t d, std::size_t j) {
    std::vector<double> v(d, 0.0);
    v[j] = 1.0;
    return v;
}

} // namespace

TEST_CASE("project: coordinate and identity projections") {
    Dataset data = synth::random_dataset(20, 3, 2, 31);

    ProjectionMatrix w;
    w.d = 3;
    w.vectors = {basis(3, 1)};
    Dataset out = project(w, data);
    CHECK(out.d() == 1);
    for (std::size_t i = 0; i < data.n(); ++i)
        CHECK(out.at(i, 0) == data.at(i, 1));

    ProjectionMatrix eye;
    eye.d = 3;
    eye.vectors = {basis(3, 0), basis(3, 1), basis(3, 2)};
    Dataset same = project(eye, data);
    CHECK(same.features == data.features);
    CHECK(same.labels == data.labels);
}

TEST_CASE("project matches a hand matrix product on a 3x2 example") {
    Dataset data;
    data.n_features = 2;
    data.n_classes = 2;
    data.features = {1, 2, 3, 4, 5, 6};
    data.labels = {0, 1, 0};
    ProjectionMatrix w;
    w.d = 2;
    w.vectors = {{0.6, 0.8}, {-0.8, 0.6}};
    Dataset out = project(w, data);
    // brute-force: y[i][k] = sum_j w[k][j] * x[i][j]
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 2; ++k) {
            double expect = 0;
            for (std::size_t j = 0; j < 2; ++j)
                expect += w.vectors[k][j] * data.at(i, j);
            CHECK(out.at(i, k) == doctest::Approx(expect).epsilon(1e-15));
        }

    ProjectionMatrix bad;
    bad.d = 5;
    bad.vectors = {basis(5, 0)};
    CHECK_THROWS_AS(project(bad, data), DataError);
}

TEST_CASE("relevance: separable direction carries ~1 bit, orthogonal ~0") {
    std::mt19937_64 rng(37);
    std::normal_distribution<double> normal(0.0, 1.0);
    Dataset data;
    data.n_features = 4;
    data.n_classes = 2;
    for (int i = 0; i < 2000; ++i) {
        double x1 = normal(rng);
        data.features.push_back(x1);
        for (int j = 1; j < 4; ++j) data.features.push_back(normal(rng));
        data.labels.push_back(x1 > 0 ? 1 : 0);
    }
    auto cfg = test_cfg();
    CHECK(relevance(basis(4, 0), data, cfg) >= 0.95);
    CHECK(relevance(basis(4, 1), data, cfg) <= 0.05);

    // scale invariance, bit-exact for a power-of-two factor
    std::vector<double> w = {0.5, 0.25, -0.25, 0.5};
    std::vector<double> w2 = {1.0, 0.5, -0.5, 1.0};
    CHECK(relevance(w, data, cfg) == relevance(w2, data, cfg));
    CHECK_THROWS_AS(relevance(std::vector<double>(4, 0.0), data, cfg), DataError);
}

TEST_CASE("redundancy_penalty: base case, cancellation, independence") {
    Dataset data = synth::random_dataset(50000, 4, 2, 41);
    auto cfg = test_cfg();

    ProjectionMatrix empty;
    empty.d = 4;
    CHECK(redundancy_penalty(basis(4, 0), empty, data, cfg) == 0.0);

    // single previous vector equal to w: summand collapses to mi_cd(w_s^T X, C)
    ProjectionMatrix ws;
    ws.d = 4;
    ws.vectors = {basis(4, 0)};
    double penalty = redundancy_penalty(basis(4, 0), ws, data, cfg);
    double direct = relevance(basis(4, 0), data, cfg);
    CHECK(penalty == doctest::Approx(direct).epsilon(1e-12));

    // independent coordinates share almost nothing
    CHECK(redundancy_penalty(basis(4, 1), ws, data, cfg) <= 0.05);
}

TEST_CASE("objective: reductions and order invariance") {
    Dataset data = synth::two_gaussians(500, 4, 1.5, 43);
    auto cfg = test_cfg();

    ProjectionMatrix empty;
    empty.d = 4;
    std::vector<double> w = {0.9, 0.1, -0.3, 0.2};
    CHECK(objective(w, empty, data, cfg) == relevance(w, data, cfg));

    ProjectionMatrix ws;
    ws.d = 4;
    ws.vectors = {basis(4, 0), basis(4, 2)};
    ProjectionMatrix sw;
    sw.d = 4;
    sw.vectors = {basis(4, 2), basis(4, 0)};
    CHECK(objective(w, ws, data, cfg) ==
          doctest::Approx(objective(w, sw, data, cfg)).epsilon(1e-12));

    // duplicate suppression: the previous vector's own direction scores ~0
    ProjectionMatrix self;
    self.d = 4;
    self.vectors = {basis(4, 0)};
    double dup = objective(basis(4, 0), self, data, cfg);
    double expect = relevance(basis(4, 0), data, cfg) -
                    mi_cd(project(self, data).column(0), data.labels, cfg.hist);
    CHECK(std::abs(dup - expect) <= 1e-9);
}

TEST_CASE("ga_optimize finds the sphere optimum of a linear fitness") {
    auto fitness = [](const std::vector<double>& w) { return w[0]; };
    GaConfig ga; // defaults
    auto result = ga_optimize(fitness, 4, ga, 101);
    std::vector<double> e1 = {1, 0, 0, 0};
    double cos = oracle::cosine(result.best, e1);
    CHECK(cos >= std::cos(5.0 * M_PI / 180.0));
}

TEST_CASE("ga_optimize: degenerate fitness still returns a unit vector") {
    auto fitness = [](const std::vector<double>&) { return 1.0; };
    auto result = ga_optimize(fitness, 6, small_ga(), 5);
    double nrm = 0;
    for (double v : result.best) nrm += v * v;
    CHECK(std::abs(std::sqrt(nrm) - 1.0) <= 1e-9);
    CHECK(result.fitness == 1.0);
}

TEST_CASE("ga_optimize is deterministic given the seed") {
    auto fitness = [](const std::vector<double>& w) { return w[0] * w[1]; };
    auto a = ga_optimize(fitness, 5, small_ga(), 77);
    auto b = ga_optimize(fitness, 5, small_ga(), 77);
    CHECK(a.best == b.best);
    CHECK(a.fitness == b.fitness);
    auto c = ga_optimize(fitness, 5, small_ga(), 78);
    CHECK(a.best != c.best);
}

TEST_CASE("ga_optimize never returns worse than the initial population") {
    std::mt19937_64 rng(83);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> target(8);
    for (double& v : target) v = normal(rng);
    auto fitness = [&](const std::vector<double>& w) {
        return oracle::cosine(w, target);
    };
    GaConfig ga = small_ga();
    // replicate restart 0's initial population fitness ceiling by checking
    // the basis vectors the optimizer is documented to inject
    double best_basis = -1e300;
    for (std::size_t j = 0; j < 8; ++j) {
        std::vector<double> e(8, 0.0);
        e[j] = 1.0;
        best_basis = std::max(best_basis, fitness(e));
    }
    auto result = ga_optimize(fitness, 8, ga, 17);
    CHECK(result.fitness >= best_basis);
}

TEST_CASE("extract recovers the informative direction and avoids duplicates") {
    int hits1 = 0, hits2 = 0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Dataset data = synth::two_gaussians(1000, 16, 2.0, 1000 + seed);
        ExtractionConfig cfg = test_cfg(2);
        cfg.ga.population = 40;
        cfg.ga.generations = 60;
        auto result = extract(data, cfg, seed);
        std::vector<double> e1(16, 0.0);
        e1[0] = 1.0;
        if (std::abs(oracle::cosine(result.projection.vectors[0], e1)) >= 0.9) ++hits1;
        // exact duplicates score objective ~0 by cancellation, so the second
        // vector must move off the first; the penalty's weight I(y1;C)/H(y1)
        // is well below 1, though, so partial overlap remains optimal and a
        // strong orthogonality bound would not hold for this objective
        if (std::abs(oracle::cosine(result.projection.vectors[1],
                                    result.projection.vectors[0])) <= 0.99)
            ++hits2;
    }
    CHECK(hits1 >= 2);
    CHECK(hits2 >= 2);
}

TEST_CASE("extract: t=1 equals a single ga_optimize on relevance") {
    Dataset data = synth::two_gaussians(300, 5, 1.0, 59);
    ExtractionConfig cfg = test_cfg(1);
    auto result = extract(data, cfg, 9);

    auto fitness = [&](const std::vector<double>& w) {
        return relevance(w, data, cfg);
    };
    auto direct = ga_optimize(fitness, 5, cfg.ga, mix_seed(9, 0));
    CHECK(result.projection.vectors[0] == direct.best);
    CHECK(result.diagnostics[0].relevance == doctest::Approx(direct.fitness));
    CHECK(result.diagnostics[0].penalty == 0.0);
}

TEST_CASE("extract: determinism, unit norms, diagnostics bookkeeping") {
    Dataset data = synth::two_gaussians(400, 6, 1.2, 61);
    ExtractionConfig cfg = test_cfg(3);
    auto a = extract(data, cfg, 21);
    auto b = extract(data, cfg, 21);
    CHECK(a.projection.vectors == b.projection.vectors);

    a.projection.validate(); // unit norms within 1e-9
    CHECK(a.diagnostics.size() == 3);
    for (const auto& diag : a.diagnostics) {
        CHECK(diag.objective == doctest::Approx(diag.relevance - diag.penalty));
        CHECK(diag.penalty >= 0.0);
    }
    // first component faced the unconstrained problem
    for (std::size_t i = 1; i < a.diagnostics.size(); ++i)
        CHECK(a.diagnostics[0].relevance >= a.diagnostics[i].relevance - 0.05);
}

TEST_CASE("extract validates t and class count") {
    Dataset data = synth::two_gaussians(50, 3, 1.0, 67);
    ExtractionConfig cfg = test_cfg(4);
    CHECK_THROWS_AS(extract(data, cfg, 1), DataError);

    Dataset single = data;
    single.labels.assign(single.n(), 0);
    single.n_classes = 1;
    cfg.t = 1;
    CHECK_THROWS_AS(extract(single, cfg, 1), DataError);
}
