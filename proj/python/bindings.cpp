#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <cstring>

#include "kkm/analysis.hpp"
#include "kkm/cli.hpp"
#include "kkm/clustering.hpp"

namespace py = pybind11;
using namespace kkm;

namespace {

template <typename T>
using Array = py::array_t<T, py::array::c_style | py::array::forcecast>;

template <typename T>
DenseMatrix<T> to_matrix(const Array<T>& a) {
    if (a.ndim() != 2) throw DimensionError("expected a 2-D array");
    const auto rows = static_cast<std::size_t>(a.shape(0));
    const auto cols = static_cast<std::size_t>(a.shape(1));
    std::vector<T> values(a.data(), a.data() + rows * cols);
    return DenseMatrix<T>(rows, cols, std::move(values));
}

template <typename T>
py::array_t<T> to_array(const DenseMatrix<T>& m) {
    py::array_t<T> out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
    std::copy(m.data().begin(), m.data().end(), out.mutable_data());
    return out;
}

template <typename T>
py::array_t<T> to_array(std::span<const T> v) {
    return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

Assignments to_assignments(const Array<index_t>& a) {
    if (a.ndim() != 1) throw DimensionError("labels must be 1-D");
    Assignments out;
    out.labels.assign(a.data(), a.data() + a.size());
    return out;
}

GramMethod gram_method(const std::string& name, double threshold) {
    GramMethod m;
    m.threshold = threshold;
    if (name == "auto") m.variant = GramMethod::Variant::automatic;
    else if (name == "gemm") m.variant = GramMethod::Variant::gemm;
    else if (name == "syrk") m.variant = GramMethod::Variant::syrk;
    else throw std::invalid_argument("gram method must be auto, gemm or syrk");
    return m;
}

KernelSpec kernel_spec(const std::string& family, double gamma, double coef, int degree, double sigma) {
    KernelSpec s;
    s.family = parse_kernel_family(family);
    s.gamma = gamma;
    s.coef = coef;
    s.degree = degree;
    s.sigma = sigma;
    s.validate();
    return s;
}

py::dict result_dict(const ClusteringResult& r) {
    py::dict d;
    d["labels"] = to_array(std::span<const index_t>(r.labels.labels));
    d["iterations_run"] = r.iterations_run;
    d["objective_history"] = r.objective_history;
    d["repairs"] = r.repairs;
    d["final_objective"] = r.final_objective;
    d["converged"] = r.converged;
    py::dict t;
    t["kernel_matrix"] = r.timings.kernel_matrix_seconds;
    t["pairwise_distances"] = r.timings.pairwise_distances_seconds;
    t["argmin_update"] = r.timings.argmin_update_seconds;
    d["timings"] = t;
    return d;
}

using Driver = ClusteringResult (*)(const DenseMatrix<double>&, const KKMeansConfig&,
                                    const IterationObserver<double>&);
using DriverF = ClusteringResult (*)(const DenseMatrix<float>&, const KKMeansConfig&,
                                     const IterationObserver<float>&);

template <Driver D64, DriverF D32>
void def_driver(py::module_& m, const char* name, const char* doc) {
    m.def(
        name,
        [](py::array points, std::size_t k, std::size_t max_iters, double tol, bool check_convergence,
           std::uint64_t seed, const std::string& kernel, double gamma, double coef, int degree,
           double sigma, const std::string& gram, double threshold, const std::string& precision) {
            KKMeansConfig cfg;
            cfg.k = k;
            cfg.max_iters = max_iters;
            cfg.tol = tol;
            cfg.check_convergence = check_convergence;
            cfg.seed = seed;
            cfg.kernel = kernel_spec(kernel, gamma, coef, degree, sigma);
            cfg.gram = gram_method(gram, threshold);
            ClusteringResult r;
            if (precision == "f64") {
                const auto p = to_matrix<double>(Array<double>::ensure(points));
                py::gil_scoped_release release;
                r = D64(p, cfg, {});
            } else if (precision == "f32") {
                const auto p = to_matrix<float>(Array<float>::ensure(points));
                py::gil_scoped_release release;
                r = D32(p, cfg, {});
            } else {
                throw std::invalid_argument("precision must be f32 or f64");
            }
            return result_dict(r);
        },
        doc, py::arg("points"), py::arg("k"), py::arg("max_iters") = 30, py::arg("tol") = 0.0,
        py::arg("check_convergence") = false, py::arg("seed") = 0, py::arg("kernel") = "polynomial",
        py::arg("gamma") = 1.0, py::arg("coef") = 1.0, py::arg("degree") = 2, py::arg("sigma") = 1.0,
        py::arg("gram") = "auto", py::arg("threshold") = 100.0, py::arg("precision") = "f32");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Kernel k-means with sparse selection-matrix distance updates";

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<LabelError>(m, "LabelError", PyExc_ValueError);
    py::register_exception<cli::ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<CsrMatrix<double>>(m, "CsrMatrix")
        .def(py::init([](std::size_t rows, std::size_t cols, const Array<index_t>& rowptrs,
                         const Array<index_t>& colinds, const Array<double>& values) {
                 return CsrMatrix<double>(rows, cols,
                                          std::vector<index_t>(rowptrs.data(), rowptrs.data() + rowptrs.size()),
                                          std::vector<index_t>(colinds.data(), colinds.data() + colinds.size()),
                                          std::vector<double>(values.data(), values.data() + values.size()));
             }),
             py::arg("rows"), py::arg("cols"), py::arg("rowptrs"), py::arg("colinds"), py::arg("values"))
        .def_property_readonly("shape", [](const CsrMatrix<double>& v) { return py::make_tuple(v.rows(), v.cols()); })
        .def_property_readonly("nnz", &CsrMatrix<double>::nnz)
        .def_property_readonly("rowptrs", [](const CsrMatrix<double>& v) { return to_array(v.rowptrs()); })
        .def_property_readonly("colinds", [](const CsrMatrix<double>& v) { return to_array(v.colinds()); })
        .def_property_readonly("values", [](const CsrMatrix<double>& v) { return to_array(v.values()); })
        .def("to_dense", [](const CsrMatrix<double>& v) {
            DenseMatrix<double> d(v.rows(), v.cols());
            for (std::size_t r = 0; r < v.rows(); ++r)
                for (std::size_t p = 0; p < v.row_nnz(r); ++p)
                    d(r, static_cast<std::size_t>(v.row_cols(r)[p])) = v.row_values(r)[p];
            return to_array(d);
        });

    m.def("select_gram_algorithm",
          [](std::size_t n, std::size_t d, const std::string& method, double threshold) {
              return select_gram_algorithm(n, d, gram_method(method, threshold)) == GramAlgorithm::gemm
                         ? "gemm"
                         : "syrk";
          },
          py::arg("n"), py::arg("d"), py::arg("method") = "auto", py::arg("threshold") = 100.0);
    m.def("compute_gram",
          [](const Array<double>& points, const std::string& method, double threshold) {
              return to_array(compute_gram(to_matrix(points), gram_method(method, threshold)));
          },
          "B = P P^T", py::arg("points"), py::arg("method") = "auto", py::arg("threshold") = 100.0);
    m.def("apply_kernel",
          [](const Array<double>& gram, const std::string& kernel, double gamma, double coef, int degree,
             double sigma) {
              return to_array(apply_kernel(to_matrix(gram), kernel_spec(kernel, gamma, coef, degree, sigma)));
          },
          py::arg("gram"), py::arg("kernel") = "polynomial", py::arg("gamma") = 1.0, py::arg("coef") = 1.0,
          py::arg("degree") = 2, py::arg("sigma") = 1.0);
    m.def("row_argmin",
          [](const Array<double>& d) {
              const auto a = row_argmin(to_matrix(d));
              return to_array(std::span<const index_t>(a.labels));
          },
          py::arg("distances"));
    m.def("selection_matrix",
          [](const Array<index_t>& labels, std::size_t k) {
              return build_selection_matrix<double>(to_assignments(labels), k);
          },
          py::arg("labels"), py::arg("k"));
    m.def("spmm_neg2_kvt",
          [](const Array<double>& kernel, const CsrMatrix<double>& v) {
              return to_array(spmm_neg2_kvt(to_matrix(kernel), v));
          },
          "-2 K V^T", py::arg("kernel"), py::arg("selection"));
    m.def("spmv_scaled",
          [](double alpha, const CsrMatrix<double>& v, const Array<double>& z) {
              const auto y = spmv_scaled(alpha, v, std::span<const double>(z.data(), static_cast<std::size_t>(z.size())));
              return to_array(std::span<const double>(y));
          },
          "alpha V z", py::arg("alpha"), py::arg("selection"), py::arg("z"));
    m.def("init_assignments",
          [](std::size_t n, std::size_t k, std::uint64_t seed) {
              const auto a = init_assignments(n, k, seed);
              return to_array(std::span<const index_t>(a.labels));
          },
          py::arg("n"), py::arg("k"), py::arg("seed") = 0);
    m.def("compute_objective",
          [](const Array<double>& kernel, const Array<index_t>& labels) {
              return compute_objective(to_matrix(kernel), to_assignments(labels));
          },
          py::arg("kernel"), py::arg("labels"));

    def_driver<&run_popcorn<double>, &run_popcorn<float>>(m, "run_popcorn",
                                                          "Kernel k-means with SpMM/SpMV distance updates.");
    def_driver<&run_baseline<double>, &run_baseline<float>>(m, "run_baseline",
                                                            "Kernel k-means with naive per-point distances.");
    def_driver<&run_lloyd<double>, &run_lloyd<float>>(m, "run_lloyd", "Input-space Lloyd iterations.");

    m.def("kernel_cost_model",
          [](const std::string& kernel, int degree, std::uint64_t n) {
              KernelSpec s;
              s.family = parse_kernel_family(kernel);
              s.degree = degree;
              const auto c = kernel_cost_model(s, n);
              return py::make_tuple(c.flops, c.memory_ops);
          },
          "(flops, memory_ops) of the elementwise kernel pass", py::arg("kernel"), py::arg("degree") = 2,
          py::arg("n"));
    auto report = [](const IntensityReport& r) {
        py::dict d;
        d["flops"] = r.flops;
        d["bytes"] = r.bytes;
        d["intensity"] = r.intensity;
        return d;
    };
    m.def("intensity_kernel_matrix",
          [report](std::uint64_t n, std::uint64_t d, std::uint64_t f_k, std::uint64_t b_k) {
              return report(intensity_kernel_matrix(n, d, f_k, b_k));
          },
          py::arg("n"), py::arg("d"), py::arg("f_k") = 0, py::arg("b_k") = 0);
    m.def("intensity_distances",
          [report](std::uint64_t n, std::uint64_t k) { return report(intensity_distances(n, k)); },
          py::arg("n"), py::arg("k"));
    m.def("augmented_distance_oracle",
          [](const Array<double>& p, const Array<double>& c) {
              return augmented_distance_oracle(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())),
                                               std::span<const double>(c.data(), static_cast<std::size_t>(c.size())));
          },
          py::arg("p"), py::arg("c"));
    m.def("load_dataset",
          [](const std::filesystem::path& path, std::optional<std::size_t> n, std::optional<std::size_t> d) {
              return to_array(cli::load_dataset<double>(path, n, d));
          },
          "Load a libsvm or CSV file as a dense float64 array.", py::arg("path"), py::arg("n") = py::none(),
          py::arg("d") = py::none());
}
