#include "mifx/baselines.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "mifx/errors.hpp"

namespace mifx {

namespace {

Eigen::MatrixXd to_eigen(const Dataset& x) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(x.n()),
                      static_cast<Eigen::Index>(x.d()));
    for (std::size_t i = 0; i < x.n(); ++i)
        for (std::size_t j = 0; j < x.d(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x.at(i, j);
    return m;
}

// Largest-magnitude entry positive; keeps serialized models stable.
void fix_sign(Eigen::VectorXd& v) {
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

} // namespace

ProjectionMatrix pca_fit(const Dataset& x, int t) {
    const auto d = static_cast<Eigen::Index>(x.d());
    if (t < 1 || t > d) throw DataError("pca: t must be in [1, d]");
    if (x.n() < 2) throw DataError("pca: need at least 2 samples");

    Eigen::MatrixXd m = to_eigen(x);
    Eigen::RowVectorXd mean = m.colwise().mean();
    m.rowwise() -= mean;
    Eigen::MatrixXd cov = (m.transpose() * m) / static_cast<double>(x.n() - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success)
        throw NumericError("pca: eigendecomposition failed");

    ProjectionMatrix w;
    w.d = x.d();
    w.method_tag = "pca";
    // Eigen returns ascending eigenvalues; take from the top.
    for (int k = 0; k < t; ++k) {
        Eigen::VectorXd v = solver.eigenvectors().col(d - 1 - k);
        fix_sign(v);
        v.normalize();
        w.vectors.push_back(to_std(v));
    }
    return w;
}

ProjectionMatrix lda_fit(const Dataset& x, int t) {
    const auto d = static_cast<Eigen::Index>(x.d());
    const int c = x.n_classes;
    if (c < 2) throw DataError("lda: need at least 2 classes");
    if (t < 1 || t > d) throw DataError("lda: t must be in [1, d]");
    if (t > c - 1)
        throw DataError("lda: t exceeds C-1 = " + std::to_string(c - 1));

    Eigen::MatrixXd m = to_eigen(x);
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(c), 0);
    for (int lab : x.labels) ++counts[static_cast<std::size_t>(lab)];
    for (int k = 0; k < c; ++k)
        if (counts[static_cast<std::size_t>(k)] < 2)
            throw DataError("lda: class " + std::to_string(k) +
                            " has fewer than 2 samples");

    Eigen::RowVectorXd global_mean = m.colwise().mean();
    Eigen::MatrixXd class_means = Eigen::MatrixXd::Zero(c, d);
    for (std::size_t i = 0; i < x.n(); ++i)
        class_means.row(x.labels[i]) += m.row(static_cast<Eigen::Index>(i));
    for (int k = 0; k < c; ++k)
        class_means.row(k) /= static_cast<double>(counts[static_cast<std::size_t>(k)]);

    Eigen::MatrixXd sw = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd sb = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < x.n(); ++i) {
        Eigen::RowVectorXd diff =
            m.row(static_cast<Eigen::Index>(i)) - class_means.row(x.labels[i]);
        sw += diff.transpose() * diff;
    }
    for (int k = 0; k < c; ++k) {
        Eigen::RowVectorXd diff = class_means.row(k) - global_mean;
        sb += static_cast<double>(counts[static_cast<std::size_t>(k)]) *
              diff.transpose() * diff;
    }

    // Ridge only when S_w is singular (fails a Cholesky test).
    Eigen::LLT<Eigen::MatrixXd> llt(sw);
    if (llt.info() != Eigen::Success) {
        double eps = std::max(1e-6 * sw.trace() / static_cast<double>(d), 1e-12);
        sw += eps * Eigen::MatrixXd::Identity(d, d);
    }

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(sb, sw);
    if (solver.info() != Eigen::Success)
        throw NumericError("lda: generalized eigendecomposition failed");

    ProjectionMatrix w;
    w.d = x.d();
    w.method_tag = "lda";
    for (int k = 0; k < t; ++k) {
        Eigen::VectorXd v = solver.eigenvectors().col(d - 1 - k);
        fix_sign(v);
        v.normalize();
        w.vectors.push_back(to_std(v));
    }
    return w;
}

} // namespace mifx
