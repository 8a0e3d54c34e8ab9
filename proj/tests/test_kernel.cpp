#include <gtest/gtest.h>

#include <cmath>

#include "kkm/kernel.hpp"
#include "test_util.hpp"

namespace kkm {
namespace {

KernelSpec spec_of(KernelFamily f) {
    KernelSpec s;
    s.family = f;
    return s;
}

const KernelFamily kAllFamilies[] = {KernelFamily::linear, KernelFamily::polynomial,
                                     KernelFamily::gaussian, KernelFamily::sigmoid};

TEST(SelectGramAlgorithm, RatioRule) {
    const GramMethod automatic{};
    EXPECT_EQ(select_gram_algorithm(50000, 100, automatic), GramAlgorithm::gemm);
    EXPECT_EQ(select_gram_algorithm(10000, 10000, automatic), GramAlgorithm::syrk);
    EXPECT_EQ(select_gram_algorithm(100, 100, automatic), GramAlgorithm::syrk);
    // ratio exactly at the threshold is not "greater than"
    EXPECT_EQ(select_gram_algorithm(10000, 100, automatic), GramAlgorithm::syrk);
    EXPECT_EQ(select_gram_algorithm(10001, 100, automatic), GramAlgorithm::gemm);
}

TEST(SelectGramAlgorithm, ExplicitVariantsPassThrough) {
    EXPECT_EQ(select_gram_algorithm(50000, 1, {GramMethod::Variant::syrk, 100}), GramAlgorithm::syrk);
    EXPECT_EQ(select_gram_algorithm(1, 50000, {GramMethod::Variant::gemm, 100}), GramAlgorithm::gemm);
    EXPECT_EQ(select_gram_algorithm(30, 1, {GramMethod::Variant::automatic, 20}), GramAlgorithm::gemm);
}

TEST(ComputeGram, HandValues) {
    for (auto v : {GramMethod::Variant::automatic, GramMethod::Variant::gemm, GramMethod::Variant::syrk}) {
        const GramMethod m{v, 100};
        EXPECT_EQ(compute_gram(DenseMatrix<float>{{1, 0}, {0, 1}}, m), (DenseMatrix<float>{{1, 0}, {0, 1}}));
        EXPECT_EQ(compute_gram(DenseMatrix<float>{{1, 2}, {3, 4}}, m), (DenseMatrix<float>{{5, 11}, {11, 25}}));
    }
    EXPECT_THROW(compute_gram(DenseMatrix<float>{{1}}, GramMethod{GramMethod::Variant::automatic, 0}),
                 std::invalid_argument);
}

TEST(ComputeGram, AutoMatchesGemmPath) {
    const auto p = test::random_matrix<float>(20, 5, 42);
    const auto automatic = compute_gram(p, {});
    const auto gemm = compute_gram(p, {GramMethod::Variant::gemm, 100});
    const auto syrk = compute_gram(p, {GramMethod::Variant::syrk, 100});
    for (std::size_t i = 0; i < 20; ++i)
        for (std::size_t j = 0; j < 20; ++j) {
            EXPECT_LE(test::rel_err(automatic(i, j), gemm(i, j)), 1e-6);
            EXPECT_LE(test::rel_err(syrk(i, j), gemm(i, j)), 1e-5);
        }
}

TEST(ApplyKernel, HandValues) {
    const DenseMatrix<float> b{{1, 0}, {0, 1}};
    EXPECT_EQ(apply_kernel(b, spec_of(KernelFamily::polynomial)), (DenseMatrix<float>{{4, 1}, {1, 4}}));
    EXPECT_EQ(apply_kernel(b, spec_of(KernelFamily::linear)), b);

    const auto g = apply_kernel(DenseMatrix<double>{{1, 0}, {0, 1}}, spec_of(KernelFamily::gaussian));
    EXPECT_EQ(g(0, 0), 1.0);
    EXPECT_EQ(g(1, 1), 1.0);
    EXPECT_DOUBLE_EQ(g(0, 1), std::exp(-2.0));
    EXPECT_DOUBLE_EQ(g(1, 0), std::exp(-2.0));

    KernelSpec sig = spec_of(KernelFamily::sigmoid);
    sig.gamma = 0.5;
    sig.coef = -0.25;
    const auto s = apply_kernel(DenseMatrix<double>{{2, 1}, {1, 3}}, sig);
    EXPECT_DOUBLE_EQ(s(0, 1), std::tanh(0.5 * 1 - 0.25));
    EXPECT_DOUBLE_EQ(s(1, 1), std::tanh(0.5 * 3 - 0.25));
}

TEST(ApplyKernel, PolynomialParameters) {
    KernelSpec spec = spec_of(KernelFamily::polynomial);
    spec.gamma = 0.5;
    spec.coef = 2.0;
    spec.degree = 3;
    const auto k = apply_kernel(DenseMatrix<double>{{2, 4}, {4, -4}}, spec);
    EXPECT_DOUBLE_EQ(k(0, 0), 27.0);   // (1 + 2)^3
    EXPECT_DOUBLE_EQ(k(0, 1), 64.0);   // (2 + 2)^3
    EXPECT_DOUBLE_EQ(k(1, 1), 0.0);    // (-2 + 2)^3
}

TEST(ApplyKernel, OverflowIsReported) {
    KernelSpec spec = spec_of(KernelFamily::polynomial);
    spec.degree = 40;
    EXPECT_THROW(apply_kernel(DenseMatrix<float>{{1e3f}}, spec), NumericError);
}

TEST(ApplyKernel, GaussianDistantPointsStayPositive) {
    KernelSpec spec = spec_of(KernelFamily::gaussian);
    const auto b = compute_gram(DenseMatrix<float>{{0.f}, {100.f}});
    const auto k = apply_kernel(b, spec);
    EXPECT_GT(k(0, 1), 0.0f);
    EXPECT_EQ(k(0, 1), std::exp(-88.0f));
}

TEST(ApplyKernel, RejectsInvalidSpecAndShape) {
    KernelSpec bad = spec_of(KernelFamily::polynomial);
    bad.degree = 0;
    EXPECT_THROW(apply_kernel(DenseMatrix<float>{{1}}, bad), std::invalid_argument);
    KernelSpec g = spec_of(KernelFamily::gaussian);
    g.sigma = 0.0;
    EXPECT_THROW(apply_kernel(DenseMatrix<float>{{1}}, g), std::invalid_argument);
    EXPECT_THROW(apply_kernel(DenseMatrix<float>(2, 3), spec_of(KernelFamily::linear)), DimensionError);
}

TEST(KernelEval, HandValues) {
    const std::vector<float> x{1, 0};
    EXPECT_EQ(kernel_eval<float>(x, x, spec_of(KernelFamily::polynomial)), 4.0f);
    const std::vector<double> y{0.3, -2.0, 5.0};
    EXPECT_EQ(kernel_eval<double>(y, y, spec_of(KernelFamily::gaussian)), 1.0);
    const std::vector<float> a{1, 2}, b{3};
    EXPECT_THROW(kernel_eval<float>(a, b, spec_of(KernelFamily::linear)), DimensionError);
}

TEST(KernelMatrix, ConsistentWithPairwiseEvaluation) {
    const auto p = test::random_matrix<float>(24, 6, 17);
    for (const auto family : kAllFamilies) {
        const auto spec = spec_of(family);
        const auto k = apply_kernel(compute_gram(p), spec);
        for (std::size_t i = 0; i < p.rows(); ++i) {
            for (std::size_t j = 0; j < p.rows(); ++j) {
                const float direct = kernel_eval<float>(p.row(i), p.row(j), spec);
                EXPECT_LE(std::abs(k(i, j) - direct), 1e-5 * std::max(1.0f, std::abs(k(i, j))))
                    << to_string(family) << " at " << i << "," << j;
            }
        }
    }
}

TEST(KernelMatrix, SymmetryAndGaussianRange) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto p = test::random_matrix<float>(16 + seed, 3 + seed % 4, seed);
        for (const auto family : kAllFamilies) {
            const auto k = apply_kernel(compute_gram(p), spec_of(family));
            for (std::size_t i = 0; i < k.rows(); ++i) {
                for (std::size_t j = 0; j < k.cols(); ++j) {
                    EXPECT_LE(test::rel_err(k(i, j), k(j, i)), 1e-6);
                    if (family == KernelFamily::gaussian) {
                        EXPECT_GT(k(i, j), 0.0f);
                        EXPECT_LE(k(i, j), 1.0f);
                    }
                }
                if (family == KernelFamily::gaussian) EXPECT_EQ(k(i, i), 1.0f);
            }
        }
    }
}

TEST(KernelMatrix, AutoIndependentOfGramAlgorithm) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto p = test::random_matrix<float>(32, 4 + seed, seed + 100);
        for (const auto family : kAllFamilies) {
            const auto spec = spec_of(family);
            const auto a = apply_kernel(compute_gram(p, {GramMethod::Variant::gemm, 100}), spec);
            const auto b = apply_kernel(compute_gram(p, {GramMethod::Variant::syrk, 100}), spec);
            const auto c = apply_kernel(compute_gram(p, {}), spec);
            for (std::size_t i = 0; i < a.size(); ++i) {
                EXPECT_LE(test::rel_err(a.data()[i], b.data()[i]), 1e-5);
                EXPECT_LE(test::rel_err(a.data()[i], c.data()[i]), 1e-5);
            }
        }
    }
}

TEST(KernelFamilyNames, RoundTripAndRejectUnknown) {
    for (const auto family : kAllFamilies) EXPECT_EQ(parse_kernel_family(to_string(family)), family);
    EXPECT_THROW(parse_kernel_family("fourier"), std::invalid_argument);
}

}  // namespace
}  // namespace kkm
