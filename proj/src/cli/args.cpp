#include <charconv>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kkm/cli.hpp"
#include "kkm/kernel.hpp"

namespace kkm::cli {

namespace {

std::string shortest(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

}  // namespace

RunSpec parse_args(std::span<const std::string> args) {
    RunSpec spec;
    CLI::App app{"Kernel k-means driven by sparse matrix products", "kkmeans"};
    app.allow_extras(false);

    int check = spec.check_convergence ? 1 : 0;
    int impl = static_cast<int>(spec.impl);
    std::string input;
    std::string output;
    std::string precision = "f32";

    app.add_option("-n", spec.n, "Number of data points in dataset");
    app.add_option("-d", spec.d, "Dimensionality of dataset");
    app.add_option("-k", spec.k, "Number of clusters")->required();
    app.add_option("--runs", spec.runs, "Number of times to run the clustering")
        ->check(CLI::PositiveNumber);
    app.add_option("-t", spec.tol, "Tolerance for determining convergence")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("-m", spec.max_iters, "Maximum number of iterations");
    app.add_option("-c", check, "Check for convergence (0 or 1)")->check(CLI::IsMember({0, 1}));
    app.add_option("--init", spec.init, "Initialization method")
        ->check(CLI::IsMember({"random"}));
    app.add_option("-f", spec.kernel_name, "Kernel function")
        ->check(CLI::IsMember({"linear", "polynomial", "sigmoid", "gaussian"}));
    auto* in_opt = app.add_option("-i", input, "Input file (libsvm or CSV)");
    app.add_option("-s", spec.seed, "RNG seed");
    app.add_option("-l", impl, "Implementation: 0 naive baseline, 2 sparse")
        ->check(CLI::IsMember({0, 2}));
    auto* out_opt = app.add_option("-o", output, "Write clustering results to a file");
    app.add_option("-p,--precision", precision, "Arithmetic precision")
        ->check(CLI::IsMember({"f32", "f64"}));

    // CLI11 consumes arguments in reverse order.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (!in_opt->empty()) spec.input_path = input;
    if (!out_opt->empty()) spec.output_path = output;
    if (!spec.input_path && (spec.n == 0 || spec.d == 0)) {
        throw UsageError("-n and -d are required when no input file is given");
    }
    if (spec.k == 0) throw UsageError("-k must be at least 1");
    spec.check_convergence = check == 1;
    spec.impl = static_cast<Impl>(impl);
    spec.precision = precision == "f64" ? Precision::f64 : Precision::f32;
    return spec;
}

RunSpec parse_args(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return parse_args(std::span<const std::string>(args));
}

std::vector<std::string> render_args(const RunSpec& spec) {
    std::vector<std::string> out;
    auto add = [&out](std::string flag, std::string value) {
        out.push_back(std::move(flag));
        out.push_back(std::move(value));
    };
    if (spec.n != 0) add("-n", std::to_string(spec.n));
    if (spec.d != 0) add("-d", std::to_string(spec.d));
    add("-k", std::to_string(spec.k));
    add("--runs", std::to_string(spec.runs));
    add("-t", shortest(spec.tol));
    add("-m", std::to_string(spec.max_iters));
    add("-c", spec.check_convergence ? "1" : "0");
    add("--init", spec.init);
    add("-f", spec.kernel_name);
    if (spec.input_path) add("-i", *spec.input_path);
    add("-s", std::to_string(spec.seed));
    add("-l", std::to_string(static_cast<int>(spec.impl)));
    if (spec.output_path) add("-o", *spec.output_path);
    add("-p", spec.precision == Precision::f64 ? "f64" : "f32");
    return out;
}

}  // namespace kkm::cli
