// Test-only generators and brute-force oracles. Nothing here calls into the
// library's linear algebra, so the oracles stay independent of the code
// under test.
#ifndef KKM_TESTS_TEST_UTIL_HPP
#define KKM_TESTS_TEST_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "kkm/clustering.hpp"
#include "kkm/dense.hpp"
#include "kkm/sparse.hpp"

namespace kkm::test {

template <typename T>
DenseMatrix<T> random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                             double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    DenseMatrix<T> m(rows, cols);
    for (auto& v : m.data()) v = static_cast<T>(dist(gen));
    return m;
}

/// Gaussian blobs: `k` centres in [-1,1]^d, isotropic noise `spread`.
template <typename T>
DenseMatrix<T> blobs(std::size_t n, std::size_t d, std::size_t k, std::uint64_t seed,
                     double spread = 0.15) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> centre(-1.0, 1.0);
    std::normal_distribution<double> noise(0.0, spread);
    std::vector<double> centres(k * d);
    for (auto& c : centres) c = centre(gen);
    DenseMatrix<T> m(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = i % k;
        for (std::size_t l = 0; l < d; ++l) m(i, l) = static_cast<T>(centres[c * d + l] + noise(gen));
    }
    return m;
}

template <typename T>
std::vector<std::vector<double>> gram_oracle(const DenseMatrix<T>& p) {
    std::vector<std::vector<double>> out(p.rows(), std::vector<double>(p.rows(), 0.0));
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.rows(); ++j)
            for (std::size_t l = 0; l < p.cols(); ++l)
                out[i][j] += static_cast<double>(p(i, l)) * static_cast<double>(p(j, l));
    return out;
}

template <typename T>
std::vector<std::vector<double>> densify(const CsrMatrix<T>& v) {
    std::vector<std::vector<double>> out(v.rows(), std::vector<double>(v.cols(), 0.0));
    const auto rp = v.rowptrs();
    const auto ci = v.colinds();
    const auto vals = v.values();
    for (std::size_t r = 0; r < v.rows(); ++r)
        for (auto p = rp[r]; p < rp[r + 1]; ++p)
            out[r][static_cast<std::size_t>(ci[static_cast<std::size_t>(p)])] =
                static_cast<double>(vals[static_cast<std::size_t>(p)]);
    return out;
}

/// diag(V K V^T) by dense brute force.
template <typename T>
std::vector<double> centroid_norms_oracle(const DenseMatrix<T>& kernel, const CsrMatrix<T>& v) {
    const auto dv = densify(v);
    const std::size_t n = kernel.rows();
    std::vector<double> out(v.rows(), 0.0);
    for (std::size_t j = 0; j < v.rows(); ++j)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                out[j] += dv[j][a] * static_cast<double>(kernel(a, b)) * dv[j][b];
    return out;
}

/// Input-space k-means objective of a partition: sum of squared distances
/// to cluster means.
inline double partition_objective(const std::vector<std::vector<double>>& points,
                                  const std::vector<int>& labels, int k) {
    const std::size_t d = points.front().size();
    std::vector<std::vector<double>> mean(static_cast<std::size_t>(k), std::vector<double>(d, 0.0));
    std::vector<int> count(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        ++count[static_cast<std::size_t>(labels[i])];
        for (std::size_t l = 0; l < d; ++l) mean[static_cast<std::size_t>(labels[i])][l] += points[i][l];
    }
    for (int j = 0; j < k; ++j)
        for (auto& m : mean[static_cast<std::size_t>(j)])
            if (count[static_cast<std::size_t>(j)] > 0) m /= count[static_cast<std::size_t>(j)];
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t l = 0; l < d; ++l) {
            const double diff = points[i][l] - mean[static_cast<std::size_t>(labels[i])][l];
            total += diff * diff;
        }
    return total;
}

inline double rel_err(double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace kkm::test

#endif  // KKM_TESTS_TEST_UTIL_HPP
