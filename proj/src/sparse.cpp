#include "kkm/sparse.hpp"

#include <limits>
#include <string>

namespace kkm {

template <typename T>
CsrMatrix<T>::CsrMatrix(std::size_t rows, std::size_t cols, std::vector<index_t> rowptrs,
                        std::vector<index_t> colinds, std::vector<T> values)
    : rows_(rows),
      cols_(cols),
      rowptrs_(std::move(rowptrs)),
      colinds_(std::move(colinds)),
      values_(std::move(values)) {
    constexpr auto max_index = static_cast<std::size_t>(std::numeric_limits<index_t>::max());
    if (rows_ > max_index || cols_ > max_index) {
        throw DimensionError("CsrMatrix: dimensions exceed 32-bit index range");
    }
    if (rowptrs_.size() != rows_ + 1) {
        throw DimensionError("CsrMatrix: rowptrs length " + std::to_string(rowptrs_.size()) +
                             " != rows+1");
    }
    if (colinds_.size() != values_.size()) {
        throw DimensionError("CsrMatrix: colinds and values lengths differ");
    }
    if (rowptrs_.front() != 0 || static_cast<std::size_t>(rowptrs_.back()) != values_.size()) {
        throw DimensionError("CsrMatrix: rowptrs must start at 0 and end at nnz");
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        if (rowptrs_[r + 1] < rowptrs_[r]) {
            throw DimensionError("CsrMatrix: rowptrs decreasing at row " + std::to_string(r));
        }
        for (auto p = rowptrs_[r]; p < rowptrs_[r + 1]; ++p) {
            const auto c = colinds_[static_cast<std::size_t>(p)];
            if (c < 0 || static_cast<std::size_t>(c) >= cols_) {
                throw DimensionError("CsrMatrix: column index " + std::to_string(c) +
                                     " out of range in row " + std::to_string(r));
            }
            if (p > rowptrs_[r] && colinds_[static_cast<std::size_t>(p - 1)] >= c) {
                throw DimensionError("CsrMatrix: column indices not strictly increasing in row " +
                                     std::to_string(r));
            }
        }
    }
}

template <typename T>
CsrMatrix<T> build_selection_matrix(const Assignments& assign, std::size_t k) {
    const std::size_t n = assign.size();
    if (k == 0) throw LabelError("build_selection_matrix: k must be positive");
    if (n == 0) throw LabelError("build_selection_matrix: no points");
    if (n > static_cast<std::size_t>(std::numeric_limits<index_t>::max())) {
        throw DimensionError("build_selection_matrix: n exceeds 32-bit index range");
    }

    std::vector<index_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto label = assign[i];
        if (label < 0 || static_cast<std::size_t>(label) >= k) {
            throw LabelError("build_selection_matrix: label " + std::to_string(label) +
                             " of point " + std::to_string(i) + " outside [0," +
                             std::to_string(k) + ")");
        }
        ++counts[static_cast<std::size_t>(label)];
    }

    std::vector<index_t> rowptrs(k + 1, 0);
    for (std::size_t j = 0; j < k; ++j) rowptrs[j + 1] = rowptrs[j] + counts[j];

    // Counting sort; scanning points in order keeps colinds ascending per row.
    std::vector<index_t> cursor(rowptrs.begin(), rowptrs.end() - 1);
    std::vector<index_t> colinds(n);
    std::vector<T> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(assign[i]);
        const auto slot = static_cast<std::size_t>(cursor[j]++);
        colinds[slot] = static_cast<index_t>(i);
        values[slot] = T{1} / static_cast<T>(counts[j]);
    }
    return CsrMatrix<T>(k, n, std::move(rowptrs), std::move(colinds), std::move(values));
}

template <typename T>
DenseMatrix<T> spmm_neg2_kvt(const DenseMatrix<T>& kernel, const CsrMatrix<T>& selection) {
    if (!kernel.is_square()) throw DimensionError("spmm_neg2_kvt: K must be square");
    if (selection.cols() != kernel.rows()) {
        throw DimensionError("spmm_neg2_kvt: V has " + std::to_string(selection.cols()) +
                             " columns, K has " + std::to_string(kernel.rows()) + " rows");
    }
    const std::size_t n = kernel.rows();
    const std::size_t k = selection.rows();
    DenseMatrix<T> out(n, k);

    // Column -> (row, value) lookup; valid while every column holds at most
    // one nonzero, which is always the case for a selection matrix.
    std::vector<index_t> owner(n, -1);
    std::vector<T> weight(n, T{0});
    bool one_per_column = true;
    for (std::size_t j = 0; j < k && one_per_column; ++j) {
        const auto cols = selection.row_cols(j);
        const auto vals = selection.row_values(j);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            const auto l = static_cast<std::size_t>(cols[p]);
            if (owner[l] != -1) {
                one_per_column = false;
                break;
            }
            owner[l] = static_cast<index_t>(j);
            weight[l] = vals[p];
        }
    }

    const auto rows = static_cast<std::ptrdiff_t>(n);
    if (one_per_column) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < rows; ++i) {
            const auto krow = kernel.row(static_cast<std::size_t>(i));
            auto dst = out.row(static_cast<std::size_t>(i));
            for (std::size_t l = 0; l < n; ++l) {
                const auto j = owner[l];
                if (j >= 0) dst[static_cast<std::size_t>(j)] += krow[l] * weight[l];
            }
            for (auto& e : dst) e *= T{-2};
        }
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < rows; ++i) {
            const auto krow = kernel.row(static_cast<std::size_t>(i));
            auto dst = out.row(static_cast<std::size_t>(i));
            for (std::size_t j = 0; j < k; ++j) {
                const auto cols = selection.row_cols(j);
                const auto vals = selection.row_values(j);
                T acc{0};
                for (std::size_t p = 0; p < cols.size(); ++p) {
                    acc += krow[static_cast<std::size_t>(cols[p])] * vals[p];
                }
                dst[j] = T{-2} * acc;
            }
        }
    }
    return out;
}

template <typename T>
Vector<T> spmv_scaled(T alpha, const CsrMatrix<T>& selection, std::span<const T> z) {
    if (selection.cols() != z.size()) {
        throw DimensionError("spmv_scaled: V has " + std::to_string(selection.cols()) +
                             " columns, z has length " + std::to_string(z.size()));
    }
    const auto k = static_cast<std::ptrdiff_t>(selection.rows());
    Vector<T> out(selection.rows(), T{0});
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < k; ++j) {
        const auto cols = selection.row_cols(static_cast<std::size_t>(j));
        const auto vals = selection.row_values(static_cast<std::size_t>(j));
        T acc{0};
        for (std::size_t p = 0; p < cols.size(); ++p) {
            acc += vals[p] * z[static_cast<std::size_t>(cols[p])];
        }
        out[static_cast<std::size_t>(j)] = alpha * acc;
    }
    return out;
}

#define KKM_INSTANTIATE_SPARSE(T)                                                         \
    template class CsrMatrix<T>;                                                          \
    template CsrMatrix<T> build_selection_matrix<T>(const Assignments&, std::size_t);     \
    template DenseMatrix<T> spmm_neg2_kvt<T>(const DenseMatrix<T>&, const CsrMatrix<T>&); \
    template Vector<T> spmv_scaled<T>(T, const CsrMatrix<T>&, std::span<const T>);

KKM_INSTANTIATE_SPARSE(float)
KKM_INSTANTIATE_SPARSE(double)

#undef KKM_INSTANTIATE_SPARSE

}  // namespace kkm
