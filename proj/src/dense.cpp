#include "kkm/dense.hpp"

#include <cmath>
#include <string>

namespace kkm {

namespace {

template <typename T>
void require_nonempty(const DenseMatrix<T>& points, const char* op) {
    if (points.rows() == 0 || points.cols() == 0) {
        throw DimensionError(std::string(op) + ": input has a zero dimension (" +
                             std::to_string(points.rows()) + "x" +
                             std::to_string(points.cols()) + ")");
    }
}

// Accumulation runs sequentially over l so every entry is reproducible.
template <typename T>
T row_dot(std::span<const T> a, std::span<const T> b) {
    T acc{0};
    for (std::size_t l = 0; l < a.size(); ++l) acc += a[l] * b[l];
    return acc;
}

}  // namespace

template <typename T>
DenseMatrix<T> gemm_gram(const DenseMatrix<T>& points) {
    require_nonempty(points, "gemm_gram");
    const auto n = static_cast<std::ptrdiff_t>(points.rows());
    DenseMatrix<T> out(points.rows(), points.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto pi = points.row(static_cast<std::size_t>(i));
        auto dst = out.row(static_cast<std::size_t>(i));
        for (std::ptrdiff_t j = 0; j < n; ++j) {
            dst[static_cast<std::size_t>(j)] = row_dot(pi, points.row(static_cast<std::size_t>(j)));
        }
    }
    return out;
}

template <typename T>
DenseMatrix<T> syrk_gram(const DenseMatrix<T>& points) {
    require_nonempty(points, "syrk_gram");
    const auto n = static_cast<std::ptrdiff_t>(points.rows());
    DenseMatrix<T> out(points.rows(), points.rows());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto pi = points.row(static_cast<std::size_t>(i));
        auto dst = out.row(static_cast<std::size_t>(i));
        for (std::ptrdiff_t j = i; j < n; ++j) {
            dst[static_cast<std::size_t>(j)] = row_dot(pi, points.row(static_cast<std::size_t>(j)));
        }
    }
    // mirror upper -> lower
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 1; i < n; ++i) {
        for (std::ptrdiff_t j = 0; j < i; ++j) {
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                out(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
        }
    }
    return out;
}

template <typename T>
Vector<T> diag(const DenseMatrix<T>& m) {
    if (!m.is_square()) {
        throw DimensionError("diag: matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected square");
    }
    Vector<T> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] = m(i, i);
    return out;
}

template <typename T>
Assignments row_argmin(const DenseMatrix<T>& m) {
    if (m.rows() == 0 || m.cols() == 0) throw DimensionError("row_argmin: empty matrix");
    const auto n = static_cast<std::ptrdiff_t>(m.rows());
    std::vector<index_t> labels(m.rows());
    bool saw_nan = false;
#pragma omp parallel for reduction(|| : saw_nan) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto r = m.row(static_cast<std::size_t>(i));
        std::size_t best = 0;
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (std::isnan(r[j])) {
                saw_nan = true;
                break;
            }
            if (r[j] < r[best]) best = j;
        }
        labels[static_cast<std::size_t>(i)] = static_cast<index_t>(best);
    }
    if (saw_nan) throw NumericError("row_argmin: NaN in distance row");
    return Assignments(std::move(labels));
}

#define KKM_INSTANTIATE_DENSE(T)                                  \
    template DenseMatrix<T> gemm_gram<T>(const DenseMatrix<T>&);  \
    template DenseMatrix<T> syrk_gram<T>(const DenseMatrix<T>&);  \
    template Vector<T> diag<T>(const DenseMatrix<T>&);            \
    template Assignments row_argmin<T>(const DenseMatrix<T>&);

KKM_INSTANTIATE_DENSE(float)
KKM_INSTANTIATE_DENSE(double)

#undef KKM_INSTANTIATE_DENSE

}  // namespace kkm
