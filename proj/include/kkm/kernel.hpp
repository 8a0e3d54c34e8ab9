#ifndef KKM_KERNEL_HPP
#define KKM_KERNEL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "kkm/dense.hpp"

namespace kkm {

enum class KernelFamily { linear, polynomial, gaussian, sigmoid };

std::string_view to_string(KernelFamily family);
/// Throws std::invalid_argument on an unknown name.
KernelFamily parse_kernel_family(std::string_view name);

/// Kernel family and parameters.
///
///   linear      x.y
///   polynomial  (gamma x.y + coef)^degree
///   gaussian    exp(-gamma |x-y|^2 / sigma^2)
///   sigmoid     tanh(gamma x.y + coef)
struct KernelSpec {
    KernelFamily family = KernelFamily::polynomial;
    double gamma = 1.0;
    double coef = 1.0;
    int degree = 2;
    double sigma = 1.0;

    void validate() const;
    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

enum class GramAlgorithm { gemm, syrk };

struct GramMethod {
    enum class Variant { automatic, gemm, syrk };
    Variant variant = Variant::automatic;
    /// GEMM is chosen when n/d exceeds this ratio.
    double threshold = 100.0;

    void validate() const;
    friend bool operator==(const GramMethod&, const GramMethod&) = default;
};

GramAlgorithm select_gram_algorithm(std::size_t n, std::size_t d, const GramMethod& method);

/// B = P P^T via GEMM or SYRK as picked by select_gram_algorithm.
template <typename T>
DenseMatrix<T> compute_gram(const DenseMatrix<T>& points, const GramMethod& method = {});

/// K from the Gram matrix B. Gaussian entries use B's diagonal, so the
/// diagonal of a Gaussian K is exactly 1. Throws NumericError on overflow.
template <typename T>
DenseMatrix<T> apply_kernel(const DenseMatrix<T>& gram, const KernelSpec& spec);

/// Single-pair kernel evaluation, consistent with apply_kernel(compute_gram(P)).
template <typename T>
T kernel_eval(std::span<const T> x, std::span<const T> y, const KernelSpec& spec);

}  // namespace kkm

#endif  // KKM_KERNEL_HPP
