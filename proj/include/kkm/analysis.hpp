#ifndef KKM_ANALYSIS_HPP
#define KKM_ANALYSIS_HPP

#include <cstdint>
#include <span>

#include "kkm/kernel.hpp"

namespace kkm {

/// FLOP and byte counts of one phase, single precision, 32-bit indices.
struct IntensityReport {
    std::uint64_t flops = 0;
    std::uint64_t bytes = 0;
    double intensity = 0.0;  // flops / bytes
};

/// FLOPs and memory operations spent applying the kernel function to B.
struct KernelCost {
    std::uint64_t flops = 0;
    std::uint64_t memory_ops = 0;
};

/// Default per-entry cost of turning B into K over n*n entries:
/// polynomial degree+1 flops, gaussian 5, sigmoid 3, linear 0; two memory
/// operations per entry for every non-linear family.
KernelCost kernel_cost_model(const KernelSpec& spec, std::uint64_t n);

/// Computing K: (F_K + 2 n^2 d) / (4 (B_K + 2 n d + n^2)).
IntensityReport intensity_kernel_matrix(std::uint64_t n, std::uint64_t d, std::uint64_t f_k,
                                        std::uint64_t b_k);

/// One iteration's distance matrix:
/// (2 n^2 + 2 n + 3 n k) / (4 (n^2 + 6 n + 4 k + 3 n k)).
IntensityReport intensity_distances(std::uint64_t n, std::uint64_t k);

/// |p - c|^2 evaluated as q C q^T with q = [1, p] and C the (d+1)x(d+1)
/// matrix [[|c|^2, -c^T], [-c, I]]. Used as an independent distance oracle.
double augmented_distance_oracle(std::span<const double> p, std::span<const double> c);

}  // namespace kkm

#endif  // KKM_ANALYSIS_HPP
