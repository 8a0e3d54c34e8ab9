#ifndef KKM_CLI_HPP
#define KKM_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kkm/clustering.hpp"
#include "kkm/dense.hpp"

namespace kkm::cli {

/// Bad command line: unknown flag, bad enum value, missing required value.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed dataset file. The message carries the path and line number.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by parse_args for -h/--help; what() holds the usage text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Impl : int { baseline = 0, popcorn = 2 };
enum class Precision { f32, f64 };

struct RunSpec {
    std::size_t n = 0;  // 0: take from the input file
    std::size_t d = 0;  // 0: take from the input file
    std::size_t k = 0;
    std::size_t runs = 1;
    double tol = 0.0;
    std::size_t max_iters = 30;
    bool check_convergence = false;
    std::string init = "random";
    std::string kernel_name = "polynomial";
    std::optional<std::string> input_path;
    std::uint64_t seed = 1;
    Impl impl = Impl::popcorn;
    std::optional<std::string> output_path;
    Precision precision = Precision::f32;

    friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

/// Parses flags (without the program name).
RunSpec parse_args(std::span<const std::string> args);
RunSpec parse_args(int argc, const char* const* argv);

/// Inverse of parse_args: parse_args(render_args(s)) == s.
std::vector<std::string> render_args(const RunSpec& spec);

/// Loads "label idx:val ..." lines with 1-based indices; unlisted features
/// are zero. n or d left empty are inferred from the file.
template <typename T>
DenseMatrix<T> load_libsvm(const std::filesystem::path& path, std::optional<std::size_t> n = {},
                           std::optional<std::size_t> d = {});

/// Loads comma-separated rows. A first row with a non-numeric cell is
/// treated as a header and skipped.
template <typename T>
DenseMatrix<T> load_csv(const std::filesystem::path& path, std::optional<std::size_t> n = {},
                        std::optional<std::size_t> d = {});

/// libsvm when the first data line contains "idx:val" tokens, CSV otherwise.
template <typename T>
DenseMatrix<T> load_dataset(const std::filesystem::path& path, std::optional<std::size_t> n = {},
                            std::optional<std::size_t> d = {});

/// Uniform [0,1) entries drawn from mt19937_64(seed).
template <typename T>
DenseMatrix<T> uniform_dataset(std::size_t n, std::size_t d, std::uint64_t seed);

/// One label per line to `path`, plus `<path>.timings.csv` with header
/// `phase,seconds`.
void write_results(const ClusteringResult& result, const std::filesystem::path& path);

std::filesystem::path timings_path(const std::filesystem::path& path);

/// Runs `spec.runs` clusterings with seeds seed, seed+1, ... and prints a
/// versioned report to `out`. Returns the process exit code; failures are
/// reported on `err`.
int run_main(const RunSpec& spec, std::ostream& out, std::ostream& err);

inline constexpr const char* kReportHeader = "# popcorn-report v1";

}  // namespace kkm::cli

#endif  // KKM_CLI_HPP
