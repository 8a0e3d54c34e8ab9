#ifndef KKM_CLUSTERING_HPP
#define KKM_CLUSTERING_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "kkm/dense.hpp"
#include "kkm/kernel.hpp"
#include "kkm/sparse.hpp"

namespace kkm {

struct KKMeansConfig {
    std::size_t k = 2;
    std::size_t max_iters = 30;
    /// Stop once (#labels changed)/n <= tol, when check_convergence is set.
    double tol = 0.0;
    bool check_convergence = false;
    std::uint64_t seed = 0;
    KernelSpec kernel{};
    GramMethod gram{};

    /// Throws LabelError or std::invalid_argument.
    void validate(std::size_t n) const;
};

/// Wall-clock seconds, accumulated over all iterations.
struct TimingBreakdown {
    double kernel_matrix_seconds = 0.0;
    double pairwise_distances_seconds = 0.0;
    double argmin_update_seconds = 0.0;
};

struct ClusteringResult {
    Assignments labels;
    std::size_t iterations_run = 0;
    /// objective_history[t] is the objective of the partition entering
    /// iteration t, read off that iteration's distance matrix.
    std::vector<double> objective_history;
    /// Number of empty clusters repaired in each iteration.
    std::vector<std::size_t> repairs;
    /// Objective of the final labels.
    double final_objective = 0.0;
    /// Whether the last iteration changed at most tol*n labels.
    bool converged = false;
    TimingBreakdown timings;
};

/// Snapshot handed to an observer at the end of each iteration.
template <typename T>
struct IterationView {
    std::size_t iteration;
    const Assignments& previous;
    const Assignments& next;
    const DenseMatrix<T>& distances;
    /// Selection matrix rebuilt from `next`; null for drivers without one.
    const CsrMatrix<T>* selection;
    std::size_t repaired;
};

template <typename T>
using IterationObserver = std::function<void(const IterationView<T>&)>;

/// Seeded uniform labels in [0,k) from mt19937_64. Empty clusters are then
/// filled by moving point j into cluster j until none remain.
Assignments init_assignments(std::size_t n, std::size_t k, std::uint64_t seed);

/// For each empty cluster j in ascending order, move the point farthest
/// from its own centroid (distances(i, label[i]); ties to the lowest index)
/// into j. Only points that have not been moved and whose cluster has
/// more than one member are eligible.
template <typename T>
Assignments repair_empty_clusters(const Assignments& assign, const DenseMatrix<T>& distances,
                                  std::size_t k);

/// Sum over points of the feature-space squared distance to the assigned
/// cluster mean, evaluated from K through the kernel trick.
template <typename T>
double compute_objective(const DenseMatrix<T>& kernel, const Assignments& assign);

/// Kernel k-means where each iteration is one SpMM (E = -2 K V^T), one SpMV
/// for the centroid norms and a fused D = E + P~ + C~ pass.
template <typename T>
ClusteringResult run_popcorn(const DenseMatrix<T>& points, const KKMeansConfig& cfg,
                             const IterationObserver<T>& observer = {});

/// Naive kernel k-means: every point-to-cluster distance is evaluated from
/// K entry by entry.
template <typename T>
ClusteringResult run_baseline(const DenseMatrix<T>& points, const KKMeansConfig& cfg,
                              const IterationObserver<T>& observer = {});

/// Classical Lloyd k-means in input space. The kernel setting is ignored.
template <typename T>
ClusteringResult run_lloyd(const DenseMatrix<T>& points, const KKMeansConfig& cfg,
                           const IterationObserver<T>& observer = {});

}  // namespace kkm

#endif  // KKM_CLUSTERING_HPP
