#include "kkm/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kkm {

namespace {

// exp() of anything below this underflows float into denormals.
constexpr double kMinExponent = -88.0;

template <typename T>
T int_pow(T base, int exponent) {
    T result{1};
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

template <typename T>
T from_inner_product(T inner, const KernelSpec& spec) {
    const T gamma = static_cast<T>(spec.gamma);
    const T coef = static_cast<T>(spec.coef);
    switch (spec.family) {
        case KernelFamily::linear:
            return inner;
        case KernelFamily::polynomial:
            return int_pow(gamma * inner + coef, spec.degree);
        case KernelFamily::sigmoid:
            return std::tanh(gamma * inner + coef);
        case KernelFamily::gaussian:
            break;
    }
    throw std::logic_error("from_inner_product: gaussian needs squared distances");
}

template <typename T>
T gaussian_from_sq_dist(T sq_dist, const KernelSpec& spec) {
    const T gamma = static_cast<T>(spec.gamma);
    const T sigma2 = static_cast<T>(spec.sigma * spec.sigma);
    const T exponent = -gamma * std::max(sq_dist, T{0}) / sigma2;
    return std::exp(std::max(exponent, static_cast<T>(kMinExponent)));
}

}  // namespace

std::string_view to_string(KernelFamily family) {
    switch (family) {
        case KernelFamily::linear: return "linear";
        case KernelFamily::polynomial: return "polynomial";
        case KernelFamily::gaussian: return "gaussian";
        case KernelFamily::sigmoid: return "sigmoid";
    }
    return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
    if (name == "linear") return KernelFamily::linear;
    if (name == "polynomial") return KernelFamily::polynomial;
    if (name == "gaussian") return KernelFamily::gaussian;
    if (name == "sigmoid") return KernelFamily::sigmoid;
    throw std::invalid_argument("unknown kernel function '" + std::string(name) + "'");
}

void KernelSpec::validate() const {
    if (degree < 1) throw std::invalid_argument("KernelSpec: degree must be >= 1");
    if (family == KernelFamily::gaussian && !(sigma > 0.0)) {
        throw std::invalid_argument("KernelSpec: gaussian sigma must be > 0");
    }
    if (!std::isfinite(gamma) || !std::isfinite(coef) || !std::isfinite(sigma)) {
        throw std::invalid_argument("KernelSpec: parameters must be finite");
    }
}

void GramMethod::validate() const {
    if (!(threshold > 0.0)) throw std::invalid_argument("GramMethod: threshold must be > 0");
}

GramAlgorithm select_gram_algorithm(std::size_t n, std::size_t d, const GramMethod& method) {
    switch (method.variant) {
        case GramMethod::Variant::gemm: return GramAlgorithm::gemm;
        case GramMethod::Variant::syrk: return GramAlgorithm::syrk;
        case GramMethod::Variant::automatic: break;
    }
    if (d == 0) return GramAlgorithm::gemm;
    const double ratio = static_cast<double>(n) / static_cast<double>(d);
    return ratio > method.threshold ? GramAlgorithm::gemm : GramAlgorithm::syrk;
}

template <typename T>
DenseMatrix<T> compute_gram(const DenseMatrix<T>& points, const GramMethod& method) {
    method.validate();
    switch (select_gram_algorithm(points.rows(), points.cols(), method)) {
        case GramAlgorithm::gemm: return gemm_gram(points);
        case GramAlgorithm::syrk: return syrk_gram(points);
    }
    throw std::logic_error("compute_gram: unreachable");
}

template <typename T>
DenseMatrix<T> apply_kernel(const DenseMatrix<T>& gram, const KernelSpec& spec) {
    spec.validate();
    if (!gram.is_square()) throw DimensionError("apply_kernel: Gram matrix must be square");

    if (spec.family != KernelFamily::gaussian) {
        return map_elementwise(gram, [&spec](T b) { return from_inner_product(b, spec); });
    }

    const std::size_t n = gram.rows();
    const auto norms = diag(gram);
    DenseMatrix<T> out(n, n);
    bool finite = true;
    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for reduction(&& : finite) schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (std::size_t j = 0; j < n; ++j) {
            const T sq = T{-2} * gram(ui, j) + norms[ui] + norms[j];
            const T v = gaussian_from_sq_dist(sq, spec);
            out(ui, j) = v;
            finite = finite && std::isfinite(v);
        }
    }
    if (!finite) throw NumericError("apply_kernel: non-finite gaussian kernel entry");
    return out;
}

template <typename T>
T kernel_eval(std::span<const T> x, std::span<const T> y, const KernelSpec& spec) {
    spec.validate();
    if (x.size() != y.size()) {
        throw DimensionError("kernel_eval: dimensions " + std::to_string(x.size()) + " and " +
                             std::to_string(y.size()) + " differ");
    }
    T value{};
    if (spec.family == KernelFamily::gaussian) {
        T sq{0};
        for (std::size_t l = 0; l < x.size(); ++l) sq += (x[l] - y[l]) * (x[l] - y[l]);
        value = gaussian_from_sq_dist(sq, spec);
    } else {
        T inner{0};
        for (std::size_t l = 0; l < x.size(); ++l) inner += x[l] * y[l];
        value = from_inner_product(inner, spec);
    }
    if (!std::isfinite(value)) throw NumericError("kernel_eval: non-finite result");
    return value;
}

#define KKM_INSTANTIATE_KERNEL(T)                                                         \
    template DenseMatrix<T> compute_gram<T>(const DenseMatrix<T>&, const GramMethod&);    \
    template DenseMatrix<T> apply_kernel<T>(const DenseMatrix<T>&, const KernelSpec&);    \
    template T kernel_eval<T>(std::span<const T>, std::span<const T>, const KernelSpec&);

KKM_INSTANTIATE_KERNEL(float)
KKM_INSTANTIATE_KERNEL(double)

#undef KKM_INSTANTIATE_KERNEL

}  // namespace kkm
