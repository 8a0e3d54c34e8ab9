#ifndef KKM_DENSE_HPP
#define KKM_DENSE_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "kkm/errors.hpp"

namespace kkm {

using index_t = std::int32_t;

template <typename T>
using Vector = std::vector<T>;

/// Per-point cluster labels. labels[i] is the cluster of point i.
struct Assignments {
    std::vector<index_t> labels;

    Assignments() = default;
    explicit Assignments(std::vector<index_t> l) : labels(std::move(l)) {}
    Assignments(std::initializer_list<index_t> l) : labels(l) {}

    std::size_t size() const { return labels.size(); }
    index_t operator[](std::size_t i) const { return labels[i]; }
    index_t& operator[](std::size_t i) { return labels[i]; }

    friend bool operator==(const Assignments&, const Assignments&) = default;
};

/// Row-major dense matrix. Holds input points, Gram and kernel matrices,
/// and the n x k distance matrices of the drivers.
template <typename T>
class DenseMatrix {
public:
    using value_type = T;

    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{0})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw DimensionError("DenseMatrix: data length " + std::to_string(data_.size()) +
                                 " != rows*cols " + std::to_string(rows_ * cols_));
        }
    }
    DenseMatrix(std::initializer_list<std::initializer_list<T>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::span<T> data() { return data_; }
    std::span<const T> data() const { return data_; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <typename T>
DenseMatrix<T>::DenseMatrix(std::initializer_list<std::initializer_list<T>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("DenseMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

/// B = P P^T with every one of the n*n entries computed explicitly.
template <typename T>
DenseMatrix<T> gemm_gram(const DenseMatrix<T>& points);

/// B = P P^T computing the upper triangle only, then copying it into the
/// lower triangle. The result is bitwise symmetric.
template <typename T>
DenseMatrix<T> syrk_gram(const DenseMatrix<T>& points);

template <typename T>
Vector<T> diag(const DenseMatrix<T>& m);

/// Column index of each row's minimum; ties resolve to the lowest index.
/// Throws NumericError if a row contains NaN.
template <typename T>
Assignments row_argmin(const DenseMatrix<T>& m);

/// out(i,j) = f(m(i,j)). Throws NumericError if f yields a non-finite value.
template <typename T, typename F>
DenseMatrix<T> map_elementwise(const DenseMatrix<T>& m, F&& f) {
    DenseMatrix<T> out(m.rows(), m.cols());
    auto src = m.data();
    auto dst = out.data();
    bool finite = true;
    const auto count = static_cast<std::ptrdiff_t>(src.size());
#pragma omp parallel for reduction(&& : finite) schedule(static)
    for (std::ptrdiff_t idx = 0; idx < count; ++idx) {
        const T v = f(src[idx]);
        dst[idx] = v;
        finite = finite && std::isfinite(v);
    }
    if (!finite) throw NumericError("map_elementwise: non-finite result");
    return out;
}

}  // namespace kkm

#endif  // KKM_DENSE_HPP
