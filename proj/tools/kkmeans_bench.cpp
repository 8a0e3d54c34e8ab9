// Phase timing of the sparse driver against the naive baseline, written as
// plot-ready CSV together with the analytical arithmetic intensities.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kkm/analysis.hpp"
#include "kkm/cli.hpp"
#include "kkm/clustering.hpp"

namespace {

template <typename T>
int bench(std::size_t n, std::size_t d, std::size_t k, std::size_t iters, std::uint64_t seed,
          const kkm::KernelSpec& kernel, std::ostream& csv) {
    const auto points = kkm::cli::uniform_dataset<T>(n, d, seed);
    kkm::KKMeansConfig cfg;
    cfg.k = k;
    cfg.max_iters = iters;
    cfg.seed = seed;
    cfg.kernel = kernel;

    const auto cost = kkm::kernel_cost_model(kernel, n);
    const auto ik = kkm::intensity_kernel_matrix(n, d, cost.flops, cost.memory_ops);
    const auto id = kkm::intensity_distances(n, k);

    csv << "impl,n,d,k,iterations,kernel_matrix_s,pairwise_distances_s,argmin_update_s,"
           "kernel_intensity,distance_intensity\n";
    double distances[2] = {0.0, 0.0};
    int slot = 0;
    for (const char* impl : {"popcorn", "baseline"}) {
        const auto result = std::string(impl) == "popcorn" ? kkm::run_popcorn(points, cfg)
                                                           : kkm::run_baseline(points, cfg);
        distances[slot++] = result.timings.pairwise_distances_seconds;
        csv << impl << ',' << n << ',' << d << ',' << k << ',' << result.iterations_run << ','
            << result.timings.kernel_matrix_seconds << ','
            << result.timings.pairwise_distances_seconds << ','
            << result.timings.argmin_update_seconds << ',' << ik.intensity << ','
            << id.intensity << '\n';
    }
    std::cerr << "distance phase speedup (baseline / sparse): "
              << distances[1] / distances[0] << "x\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kkmeans phase benchmark", "kkmeans_bench"};
    std::size_t n = 4096, d = 16, k = 50, iters = 3;
    std::uint64_t seed = 1;
    std::string kernel_name = "polynomial";
    std::string precision = "f32";
    std::string csv_path;
    app.add_option("-n", n, "Number of points");
    app.add_option("-d", d, "Dimensionality");
    app.add_option("-k", k, "Number of clusters");
    app.add_option("-m", iters, "Iterations");
    app.add_option("-s", seed, "Seed");
    app.add_option("-f", kernel_name, "Kernel function")
        ->check(CLI::IsMember({"linear", "polynomial", "sigmoid", "gaussian"}));
    app.add_option("-p,--precision", precision)->check(CLI::IsMember({"f32", "f64"}));
    app.add_option("--csv", csv_path, "Write CSV here instead of stdout");
    CLI11_PARSE(app, argc, argv);

    kkm::KernelSpec kernel;
    kernel.family = kkm::parse_kernel_family(kernel_name);

    std::ofstream file;
    if (!csv_path.empty()) {
        file.open(csv_path);
        if (!file) {
            std::cerr << "kkmeans_bench: cannot open '" << csv_path << "'\n";
            return 1;
        }
    }
    std::ostream& csv = csv_path.empty() ? std::cout : file;
    return precision == "f64" ? bench<double>(n, d, k, iters, seed, kernel, csv)
                              : bench<float>(n, d, k, iters, seed, kernel, csv);
}
