#ifndef KKM_SPARSE_HPP
#define KKM_SPARSE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "kkm/dense.hpp"

namespace kkm {

/// Compressed sparse row matrix with 32-bit indices.
///
/// The constructor validates the CSR invariants: rowptrs has rows+1
/// non-decreasing entries starting at 0 and ending at nnz, every column
/// index is in [0, cols), and column indices strictly increase within a row.
/// Immutable once built.
template <typename T>
class CsrMatrix {
public:
    CsrMatrix() : rowptrs_{0} {}
    CsrMatrix(std::size_t rows, std::size_t cols, std::vector<index_t> rowptrs,
              std::vector<index_t> colinds, std::vector<T> values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return values_.size(); }

    std::span<const index_t> rowptrs() const { return rowptrs_; }
    std::span<const index_t> colinds() const { return colinds_; }
    std::span<const T> values() const { return values_; }

    std::span<const index_t> row_cols(std::size_t r) const {
        return colinds().subspan(static_cast<std::size_t>(rowptrs_[r]), row_nnz(r));
    }
    std::span<const T> row_values(std::size_t r) const {
        return values().subspan(static_cast<std::size_t>(rowptrs_[r]), row_nnz(r));
    }
    std::size_t row_nnz(std::size_t r) const {
        return static_cast<std::size_t>(rowptrs_[r + 1] - rowptrs_[r]);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<index_t> rowptrs_;
    std::vector<index_t> colinds_;
    std::vector<T> values_;
};

/// Selection matrix V (k x n): V(j,i) = 1/|L_j| when point i is in cluster j.
/// Empty clusters become empty rows.
template <typename T>
CsrMatrix<T> build_selection_matrix(const Assignments& assign, std::size_t k);

/// E = -2 K V^T, an n x k dense matrix.
template <typename T>
DenseMatrix<T> spmm_neg2_kvt(const DenseMatrix<T>& kernel, const CsrMatrix<T>& selection);

/// out = alpha * V z.
template <typename T>
Vector<T> spmv_scaled(T alpha, const CsrMatrix<T>& selection, std::span<const T> z);

}  // namespace kkm

#endif  // KKM_SPARSE_HPP
