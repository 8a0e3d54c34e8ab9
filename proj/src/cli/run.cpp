#include <exception>
#include <iomanip>
#include <ostream>
#include <string>

#include "kkm/cli.hpp"
#include "kkm/kernel.hpp"

namespace kkm::cli {

namespace {

std::filesystem::path output_for_run(const std::string& base, std::size_t run, std::size_t runs) {
    if (runs == 1) return base;
    return base + ".run" + std::to_string(run);
}

template <typename T>
void run_all(const RunSpec& spec, std::ostream& out) {
    KKMeansConfig cfg;
    cfg.k = spec.k;
    cfg.max_iters = spec.max_iters;
    cfg.tol = spec.tol;
    cfg.check_convergence = spec.check_convergence;
    cfg.kernel.family = parse_kernel_family(spec.kernel_name);

    DenseMatrix<T> loaded;
    if (spec.input_path) {
        const auto n = spec.n ? std::optional<std::size_t>(spec.n) : std::nullopt;
        const auto d = spec.d ? std::optional<std::size_t>(spec.d) : std::nullopt;
        loaded = load_dataset<T>(*spec.input_path, n, d);
    }

    out << kReportHeader << '\n';
    out << "# run seed impl n d k iterations converged objective kernel_matrix_s "
           "pairwise_distances_s argmin_update_s\n";
    for (std::size_t r = 0; r < spec.runs; ++r) {
        cfg.seed = spec.seed + r;
        const DenseMatrix<T> points =
            spec.input_path ? loaded : uniform_dataset<T>(spec.n, spec.d, cfg.seed);
        const ClusteringResult result = spec.impl == Impl::popcorn
                                            ? run_popcorn(points, cfg)
                                            : run_baseline(points, cfg);
        out << r << ' ' << cfg.seed << ' '
            << (spec.impl == Impl::popcorn ? "popcorn" : "baseline") << ' ' << points.rows()
            << ' ' << points.cols() << ' ' << cfg.k << ' ' << result.iterations_run << ' '
            << (result.converged ? 1 : 0) << ' ' << std::scientific << std::setprecision(9)
            << result.final_objective << ' ' << result.timings.kernel_matrix_seconds << ' '
            << result.timings.pairwise_distances_seconds << ' '
            << result.timings.argmin_update_seconds << std::defaultfloat << '\n';
        if (spec.output_path) {
            write_results(result, output_for_run(*spec.output_path, r, spec.runs));
        }
    }
}

}  // namespace

int run_main(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        if (spec.init != "random") throw UsageError("--init must be 'random'");
        if (spec.impl != Impl::baseline && spec.impl != Impl::popcorn) {
            throw UsageError("-l must be 0 or 2");
        }
        if (spec.precision == Precision::f64) {
            run_all<double>(spec, out);
        } else {
            run_all<float>(spec, out);
        }
    } catch (const std::exception& e) {
        err << "kkmeans: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace kkm::cli
