#include "kkm/clustering.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace kkm {

namespace {

using Clock = std::chrono::steady_clock;

// High 64 bits of a 64x64-bit product.
std::uint64_t mul_high(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t a_lo = a & 0xffffffffu, a_hi = a >> 32;
    const std::uint64_t b_lo = b & 0xffffffffu, b_hi = b >> 32;
    const std::uint64_t lo_lo = a_lo * b_lo;
    const std::uint64_t hi_lo = a_hi * b_lo;
    const std::uint64_t lo_hi = a_lo * b_hi;
    const std::uint64_t cross = (lo_lo >> 32) + (hi_lo & 0xffffffffu) + lo_hi;
    return a_hi * b_hi + (hi_lo >> 32) + (cross >> 32);
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::size_t> cluster_sizes(const Assignments& assign, std::size_t k) {
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < assign.size(); ++i) {
        const auto label = assign[i];
        if (label < 0 || static_cast<std::size_t>(label) >= k) {
            throw LabelError("label " + std::to_string(label) + " of point " + std::to_string(i) +
                             " outside [0," + std::to_string(k) + ")");
        }
        ++sizes[static_cast<std::size_t>(label)];
    }
    return sizes;
}

std::size_t count_empty(const Assignments& assign, std::size_t k) {
    std::size_t empty = 0;
    for (auto s : cluster_sizes(assign, k)) empty += (s == 0);
    return empty;
}

template <typename T>
void require_finite(const DenseMatrix<T>& points) {
    for (const T v : points.data()) {
        if (!std::isfinite(v)) throw NumericError("input points contain NaN or Inf");
    }
}

template <typename T>
DenseMatrix<T> build_kernel_matrix(const DenseMatrix<T>& points, const KKMeansConfig& cfg) {
    return apply_kernel(compute_gram(points, cfg.gram), cfg.kernel);
}

// Shared Lloyd-style loop. `distances(labels, selection)` returns the n x k
// distance matrix for the partition `labels`; `selection` is kept in sync
// with `labels` only when `with_selection` is set.
template <typename T, typename DistanceFn>
ClusteringResult iterate(std::size_t n, const KKMeansConfig& cfg, bool with_selection,
                         DistanceFn&& distances, const IterationObserver<T>& observer,
                         ClusteringResult result) {
    const std::size_t k = cfg.k;
    Assignments labels = init_assignments(n, k, cfg.seed);
    CsrMatrix<T> selection;
    if (with_selection) selection = build_selection_matrix<T>(labels, k);

    for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
        auto t0 = Clock::now();
        const DenseMatrix<T> dist = distances(labels, selection);
        result.timings.pairwise_distances_seconds += seconds_since(t0);

        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            objective += static_cast<double>(dist(i, static_cast<std::size_t>(labels[i])));
        }
        result.objective_history.push_back(objective);

        t0 = Clock::now();
        Assignments next = row_argmin(dist);
        const std::size_t empty = count_empty(next, k);
        if (empty > 0) next = repair_empty_clusters(next, dist, k);
        std::size_t changed = 0;
        for (std::size_t i = 0; i < n; ++i) changed += (next[i] != labels[i]);
        if (with_selection) selection = build_selection_matrix<T>(next, k);
        result.timings.argmin_update_seconds += seconds_since(t0);
        result.repairs.push_back(empty);

        if (observer) {
            observer(IterationView<T>{iter, labels, next, dist,
                                      with_selection ? &selection : nullptr, empty});
        }
        labels = std::move(next);
        ++result.iterations_run;

        result.converged = static_cast<double>(changed) / static_cast<double>(n) <= cfg.tol;
        if (cfg.check_convergence && result.converged) break;
    }
    result.labels = std::move(labels);
    return result;
}

}  // namespace

void KKMeansConfig::validate(std::size_t n) const {
    if (k < 1) throw LabelError("k must be at least 1");
    if (k > n) {
        throw LabelError("k=" + std::to_string(k) + " exceeds the number of points n=" +
                         std::to_string(n));
    }
    if (!(tol >= 0.0) || tol > 1.0) throw std::invalid_argument("tol must be in [0,1]");
    kernel.validate();
    gram.validate();
}

Assignments init_assignments(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 1) throw LabelError("init_assignments: k must be at least 1");
    if (k > n) {
        throw LabelError("init_assignments: k=" + std::to_string(k) + " exceeds n=" +
                         std::to_string(n));
    }
    std::mt19937_64 gen(seed);
    std::vector<index_t> labels(n);
    for (auto& label : labels) {
        // Multiply-shift maps the raw 64-bit draw onto [0,k) identically on
        // every platform, unlike std::uniform_int_distribution.
        label = static_cast<index_t>(mul_high(gen(), static_cast<std::uint64_t>(k)));
    }

    Assignments assign(std::move(labels));
    auto sizes = cluster_sizes(assign, k);
    bool any_empty = true;
    // Point j only ever moves into cluster j, and once there it stays, so
    // this terminates after at most k passes.
    while (any_empty) {
        any_empty = false;
        for (std::size_t j = 0; j < k; ++j) {
            if (sizes[j] != 0) continue;
            --sizes[static_cast<std::size_t>(assign[j])];
            assign[j] = static_cast<index_t>(j);
            ++sizes[j];
            any_empty = true;
        }
    }
    return assign;
}

template <typename T>
Assignments repair_empty_clusters(const Assignments& assign, const DenseMatrix<T>& distances,
                                  std::size_t k) {
    const std::size_t n = assign.size();
    if (k > n) {
        throw LabelError("repair_empty_clusters: k=" + std::to_string(k) + " exceeds n=" +
                         std::to_string(n));
    }
    if (distances.rows() != n || distances.cols() != k) {
        throw DimensionError("repair_empty_clusters: distances must be n x k");
    }
    Assignments out = assign;
    auto sizes = cluster_sizes(out, k);
    std::vector<bool> moved(n, false);

    for (std::size_t j = 0; j < k; ++j) {
        if (sizes[j] != 0) continue;
        std::size_t best = n;
        T best_dist{};
        for (std::size_t i = 0; i < n; ++i) {
            const auto own = static_cast<std::size_t>(out[i]);
            if (moved[i] || sizes[own] < 2) continue;
            const T d = distances(i, own);
            if (best == n || d > best_dist) {
                best = i;
                best_dist = d;
            }
        }
        // k <= n guarantees a donor cluster with two or more unmoved points.
        if (best == n) throw std::logic_error("repair_empty_clusters: no donor point");
        --sizes[static_cast<std::size_t>(out[best])];
        out[best] = static_cast<index_t>(j);
        ++sizes[j];
        moved[best] = true;
    }
    return out;
}

template <typename T>
double compute_objective(const DenseMatrix<T>& kernel, const Assignments& assign) {
    const std::size_t n = assign.size();
    if (!kernel.is_square() || kernel.rows() != n) {
        throw DimensionError("compute_objective: K must be n x n for n labels");
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (assign[i] < 0) throw LabelError("compute_objective: negative label");
        k = std::max(k, static_cast<std::size_t>(assign[i]) + 1);
    }
    const auto sizes = cluster_sizes(assign, k);

    // own[i] = sum of K(i,l) over l in i's cluster; self[j] = sum over pairs in j.
    std::vector<double> own(n, 0.0);
    std::vector<double> self(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto krow = kernel.row(i);
        double acc = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            if (assign[l] == assign[i]) acc += static_cast<double>(krow[l]);
        }
        own[i] = acc;
        self[static_cast<std::size_t>(assign[i])] += acc;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(assign[i]);
        const double size = static_cast<double>(sizes[j]);
        total += static_cast<double>(kernel(i, i)) - 2.0 * own[i] / size +
                 self[j] / (size * size);
    }
    return total;
}

template <typename T>
ClusteringResult run_popcorn(const DenseMatrix<T>& points, const KKMeansConfig& cfg,
                             const IterationObserver<T>& observer) {
    const std::size_t n = points.rows();
    cfg.validate(n);
    require_finite(points);

    ClusteringResult result;
    auto t0 = Clock::now();
    const DenseMatrix<T> kernel = build_kernel_matrix(points, cfg);
    const Vector<T> point_norms = diag(kernel);
    result.timings.kernel_matrix_seconds = seconds_since(t0);

    const std::size_t k = cfg.k;
    auto distances = [&](const Assignments& labels, const CsrMatrix<T>& selection) {
        DenseMatrix<T> dist = spmm_neg2_kvt(kernel, selection);
        Vector<T> z(n);
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = T{-0.5} * dist(i, static_cast<std::size_t>(labels[i]));
        }
        const Vector<T> centroid_norms = spmv_scaled(T{1}, selection, std::span<const T>(z));
        const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < rows; ++i) {
            auto r = dist.row(static_cast<std::size_t>(i));
            const T pn = point_norms[static_cast<std::size_t>(i)];
            for (std::size_t j = 0; j < k; ++j) r[j] = r[j] + pn + centroid_norms[j];
        }
        return dist;
    };
    result = iterate<T>(n, cfg, true, distances, observer, std::move(result));
    result.final_objective = compute_objective(kernel, result.labels);
    return result;
}

template <typename T>
ClusteringResult run_baseline(const DenseMatrix<T>& points, const KKMeansConfig& cfg,
                              const IterationObserver<T>& observer) {
    const std::size_t n = points.rows();
    cfg.validate(n);
    require_finite(points);

    ClusteringResult result;
    auto t0 = Clock::now();
    const DenseMatrix<T> kernel = build_kernel_matrix(points, cfg);
    result.timings.kernel_matrix_seconds = seconds_since(t0);

    const std::size_t k = cfg.k;
    auto distances = [&](const Assignments& labels, const CsrMatrix<T>&) {
        const auto sizes = cluster_sizes(labels, k);
        std::vector<T> self(k, T{0});
        for (std::size_t l = 0; l < n; ++l) {
            for (std::size_t m = 0; m < n; ++m) {
                if (labels[l] == labels[m]) self[static_cast<std::size_t>(labels[l])] += kernel(l, m);
            }
        }
        DenseMatrix<T> dist(n, k);
        const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t si = 0; si < rows; ++si) {
            const auto i = static_cast<std::size_t>(si);
            const auto krow = kernel.row(i);
            for (std::size_t j = 0; j < k; ++j) {
                if (sizes[j] == 0) {
                    dist(i, j) = kernel(i, i);
                    continue;
                }
                T cross{0};
                for (std::size_t l = 0; l < n; ++l) {
                    if (static_cast<std::size_t>(labels[l]) == j) cross += krow[l];
                }
                const T size = static_cast<T>(sizes[j]);
                dist(i, j) = kernel(i, i) - T{2} * cross / size + self[j] / (size * size);
            }
        }
        return dist;
    };
    result = iterate<T>(n, cfg, false, distances, observer, std::move(result));
    result.final_objective = compute_objective(kernel, result.labels);
    return result;
}

template <typename T>
ClusteringResult run_lloyd(const DenseMatrix<T>& points, const KKMeansConfig& cfg,
                           const IterationObserver<T>& observer) {
    const std::size_t n = points.rows();
    const std::size_t d = points.cols();
    cfg.validate(n);
    require_finite(points);
    if (d == 0) throw DimensionError("run_lloyd: points have zero dimensions");

    const std::size_t k = cfg.k;
    auto centroids_of = [&](const Assignments& labels) {
        const auto sizes = cluster_sizes(labels, k);
        DenseMatrix<T> centroids(k, d);
        for (std::size_t i = 0; i < n; ++i) {
            auto c = centroids.row(static_cast<std::size_t>(labels[i]));
            const auto p = points.row(i);
            for (std::size_t l = 0; l < d; ++l) c[l] += p[l];
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (sizes[j] == 0) continue;
            for (auto& v : centroids.row(j)) v /= static_cast<T>(sizes[j]);
        }
        return centroids;
    };
    auto sq_dist = [](std::span<const T> a, std::span<const T> b) {
        T acc{0};
        for (std::size_t l = 0; l < a.size(); ++l) acc += (a[l] - b[l]) * (a[l] - b[l]);
        return acc;
    };
    auto distances = [&](const Assignments& labels, const CsrMatrix<T>&) {
        const DenseMatrix<T> centroids = centroids_of(labels);
        DenseMatrix<T> dist(n, k);
        const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t si = 0; si < rows; ++si) {
            const auto i = static_cast<std::size_t>(si);
            for (std::size_t j = 0; j < k; ++j) dist(i, j) = sq_dist(points.row(i), centroids.row(j));
        }
        return dist;
    };

    ClusteringResult result = iterate<T>(n, cfg, false, distances, observer, ClusteringResult{});
    const DenseMatrix<T> centroids = centroids_of(result.labels);
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        objective += static_cast<double>(
            sq_dist(points.row(i), centroids.row(static_cast<std::size_t>(result.labels[i]))));
    }
    result.final_objective = objective;
    return result;
}

#define KKM_INSTANTIATE_CLUSTERING(T)                                                         \
    template Assignments repair_empty_clusters<T>(const Assignments&, const DenseMatrix<T>&,  \
                                                  std::size_t);                               \
    template double compute_objective<T>(const DenseMatrix<T>&, const Assignments&);          \
    template ClusteringResult run_popcorn<T>(const DenseMatrix<T>&, const KKMeansConfig&,     \
                                             const IterationObserver<T>&);                    \
    template ClusteringResult run_baseline<T>(const DenseMatrix<T>&, const KKMeansConfig&,    \
                                              const IterationObserver<T>&);                   \
    template ClusteringResult run_lloyd<T>(const DenseMatrix<T>&, const KKMeansConfig&,       \
                                           const IterationObserver<T>&);

KKM_INSTANTIATE_CLUSTERING(float)
KKM_INSTANTIATE_CLUSTERING(double)

#undef KKM_INSTANTIATE_CLUSTERING

}  // namespace kkm
