#include "kkm/analysis.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "kkm/errors.hpp"

namespace kkm {

namespace {

IntensityReport make_report(std::uint64_t flops, std::uint64_t bytes) {
    if (bytes == 0) throw std::invalid_argument("intensity: zero bytes");
    return {flops, bytes, static_cast<double>(flops) / static_cast<double>(bytes)};
}

void require_positive(std::uint64_t v, const char* name) {
    if (v == 0) throw std::invalid_argument(std::string(name) + " must be >= 1");
}

}  // namespace

KernelCost kernel_cost_model(const KernelSpec& spec, std::uint64_t n) {
    const std::uint64_t entries = n * n;
    std::uint64_t per_entry = 0;
    switch (spec.family) {
        case KernelFamily::linear: return {0, 0};
        case KernelFamily::polynomial: per_entry = static_cast<std::uint64_t>(spec.degree) + 1; break;
        case KernelFamily::gaussian: per_entry = 5; break;
        case KernelFamily::sigmoid: per_entry = 3; break;
    }
    return {per_entry * entries, 2 * entries};
}

IntensityReport intensity_kernel_matrix(std::uint64_t n, std::uint64_t d, std::uint64_t f_k,
                                        std::uint64_t b_k) {
    require_positive(n, "n");
    require_positive(d, "d");
    const std::uint64_t flops = f_k + 2 * n * n * d;
    const std::uint64_t bytes = 4 * (b_k + 2 * n * d + n * n);
    return make_report(flops, bytes);
}

IntensityReport intensity_distances(std::uint64_t n, std::uint64_t k) {
    require_positive(n, "n");
    require_positive(k, "k");
    const std::uint64_t flops = 2 * n * n + 2 * n + 3 * n * k;
    const std::uint64_t bytes = 4 * (n * n + 6 * n + 4 * k + 3 * n * k);
    return make_report(flops, bytes);
}

double augmented_distance_oracle(std::span<const double> p, std::span<const double> c) {
    if (p.size() != c.size()) {
        throw DimensionError("augmented_distance_oracle: dimensions " + std::to_string(p.size()) +
                             " and " + std::to_string(c.size()) + " differ");
    }
    const std::size_t m = p.size() + 1;
    std::vector<double> mat(m * m, 0.0);
    double corner = 0.0;
    for (std::size_t l = 0; l < c.size(); ++l) {
        corner += c[l] * c[l];
        mat[l + 1] = -c[l];
        mat[(l + 1) * m] = -c[l];
        mat[(l + 1) * m + l + 1] = 1.0;
    }
    mat[0] = corner;

    std::vector<double> q(m, 1.0);
    for (std::size_t l = 0; l < p.size(); ++l) q[l + 1] = p[l];

    // (q C) q^T
    double result = 0.0;
    for (std::size_t col = 0; col < m; ++col) {
        double qc = 0.0;
        for (std::size_t r = 0; r < m; ++r) qc += q[r] * mat[r * m + col];
        result += qc * q[col];
    }
    return result;
}

}  // namespace kkm
