// Independent reference implementations used only by tests. These stay
// deliberately naive (plain formulas, long double, exhaustive scans) and
// share no code with the library paths they check.
#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

// Analytic MI (bits) of a discrete joint count table.
inline double mi_of_table(const std::vector<std::vector<long long>>& joint) {
    long double n = 0;
    for (const auto& row : joint)
        for (long long c : row) n += c;
    std::vector<long double> px(joint.size(), 0), py(joint[0].size(), 0);
    for (std::size_t i = 0; i < joint.size(); ++i)
        for (std::size_t j = 0; j < joint[i].size(); ++j) {
            px[i] += joint[i][j];
            py[j] += joint[i][j];
        }
    long double mi = 0;
    for (std::size_t i = 0; i < joint.size(); ++i)
        for (std::size_t j = 0; j < joint[i].size(); ++j) {
            if (joint[i][j] == 0) continue;
            long double pij = joint[i][j] / n;
            mi += pij * std::log(pij / ((px[i] / n) * (py[j] / n)));
        }
    return static_cast<double>(mi / std::log(2.0L));
}

inline double entropy_of_counts(const std::vector<long long>& counts) {
    long double n = 0;
    for (long long c : counts) n += c;
    long double h = 0;
    for (long long c : counts) {
        if (c == 0) continue;
        long double p = c / n;
        h -= p * std::log(p);
    }
    return static_cast<double>(h / std::log(2.0L));
}

// Closed-form MI (bits) of a bivariate normal with correlation rho.
inline double gaussian_mi(double rho) {
    return -0.5 * std::log2(1.0 - rho * rho);
}

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns
// eigenvalues ascending with matching eigenvector columns.
struct EigenResult {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors; // vectors[k] is the k-th eigenvector
};

inline EigenResult jacobi_eigen(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a[x][x] < a[y][y]; });
    EigenResult out;
    for (std::size_t k : order) {
        out.values.push_back(a[k][k]);
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = v[i][k];
        out.vectors.push_back(col);
    }
    return out;
}

// Exhaustive nearest-neighbor scan; ties go to the lowest training index.
inline std::vector<int> knn1_scan(const std::vector<std::vector<double>>& train,
                                  const std::vector<int>& labels,
                                  const std::vector<std::vector<double>>& test) {
    std::vector<int> out;
    for (const auto& q : test) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < train.size(); ++i) {
            double dist = 0.0;
            for (std::size_t j = 0; j < q.size(); ++j)
                dist += (q[j] - train[i][j]) * (q[j] - train[i][j]);
            dist = std::sqrt(dist);
            if (dist < best) {
                best = dist;
                best_i = i;
            }
        }
        out.push_back(labels[best_i]);
    }
    return out;
}

inline double fisher_ratio(const std::vector<double>& w,
                           const std::vector<std::vector<double>>& sb,
                           const std::vector<std::vector<double>>& sw) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) {
            num += w[i] * sb[i][j] * w[j];
            den += w[i] * sw[i][j] * w[j];
        }
    return den > 0 ? num / den : 0.0;
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return dot / std::sqrt(na * nb);
}

} // namespace oracle
