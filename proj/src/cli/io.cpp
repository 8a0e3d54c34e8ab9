#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kkm/cli.hpp"

namespace kkm::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_real(std::string_view token, double& out) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    if (token.empty()) return false;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

bool parse_index(std::string_view token, std::size_t& out) {
    if (token.empty()) return false;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file '" + path.string() + "'");
    return in;
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line, const std::string& what) {
    throw ParseError(path.string() + ":" + std::to_string(line) + ": " + what);
}

template <typename T>
DenseMatrix<T> to_matrix(const std::vector<std::vector<double>>& rows, std::size_t d) {
    DenseMatrix<T> out(rows.size(), d);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) out(i, j) = static_cast<T>(rows[i][j]);
    }
    return out;
}

}  // namespace

template <typename T>
DenseMatrix<T> load_libsvm(const std::filesystem::path& path, std::optional<std::size_t> n,
                           std::optional<std::size_t> d) {
    auto in = open_input(path);
    struct Entry {
        std::size_t index;
        double value;
    };
    std::vector<std::vector<Entry>> rows;
    std::size_t max_index = 0;
    std::string raw;
    std::size_t line_no = 0;
    while ((!n || rows.size() < *n) && std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto tokens = split_ws(line);
        double label = 0.0;
        if (!parse_real(tokens.front(), label)) fail(path, line_no, "malformed label");
        std::vector<Entry> row;
        for (std::size_t t = 1; t < tokens.size(); ++t) {
            const auto colon = tokens[t].find(':');
            if (colon == std::string_view::npos) fail(path, line_no, "expected idx:val token");
            std::size_t index = 0;
            double value = 0.0;
            if (!parse_index(tokens[t].substr(0, colon), index) || index == 0) {
                fail(path, line_no, "malformed feature index");
            }
            if (!parse_real(tokens[t].substr(colon + 1), value)) {
                fail(path, line_no, "malformed feature value");
            }
            if (d && index > *d) {
                fail(path, line_no, "feature index " + std::to_string(index) + " exceeds d=" +
                                        std::to_string(*d));
            }
            max_index = std::max(max_index, index);
            row.push_back({index, value});
        }
        rows.push_back(std::move(row));
    }
    if (n && rows.size() < *n) {
        throw ParseError(path.string() + ": expected " + std::to_string(*n) + " points, found " +
                         std::to_string(rows.size()));
    }
    if (rows.empty()) throw ParseError(path.string() + ": no data lines");
    const std::size_t dims = d.value_or(max_index);
    if (dims == 0) throw ParseError(path.string() + ": no features");

    DenseMatrix<T> out(rows.size(), dims);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& e : rows[i]) out(i, e.index - 1) = static_cast<T>(e.value);
    }
    return out;
}

template <typename T>
DenseMatrix<T> load_csv(const std::filesystem::path& path, std::optional<std::size_t> n,
                        std::optional<std::size_t> d) {
    auto in = open_input(path);
    std::vector<std::vector<double>> rows;
    std::size_t cols = 0;
    std::string raw;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        std::vector<double> row(cells.size());
        std::size_t bad = cells.size();
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!parse_real(trim(cells[c]), row[c])) {
                bad = c;
                break;
            }
        }
        const bool is_first = first;
        first = false;
        if (bad != cells.size()) {
            if (is_first) continue;  // header
            fail(path, line_no, "non-numeric cell in column " + std::to_string(bad + 1));
        }
        if (rows.empty()) {
            cols = row.size();
        } else if (row.size() != cols) {
            fail(path, line_no, "expected " + std::to_string(cols) + " columns, found " +
                                    std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(path.string() + ": no data rows");
    if (d && cols != *d) {
        throw ParseError(path.string() + ": expected " + std::to_string(*d) + " columns, found " +
                         std::to_string(cols));
    }
    if (n && rows.size() != *n) {
        throw ParseError(path.string() + ": expected " + std::to_string(*n) + " rows, found " +
                         std::to_string(rows.size()));
    }
    return to_matrix<T>(rows, cols);
}

template <typename T>
DenseMatrix<T> load_dataset(const std::filesystem::path& path, std::optional<std::size_t> n,
                            std::optional<std::size_t> d) {
    auto in = open_input(path);
    std::string raw;
    while (std::getline(in, raw)) {
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (line.find(':') != std::string_view::npos) return load_libsvm<T>(path, n, d);
        break;
    }
    return load_csv<T>(path, n, d);
}

template <typename T>
DenseMatrix<T> uniform_dataset(std::size_t n, std::size_t d, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    DenseMatrix<T> out(n, d);
    for (auto& v : out.data()) {
        // top 53 bits -> [0,1)
        v = static_cast<T>(static_cast<double>(gen() >> 11) * 0x1.0p-53);
    }
    return out;
}

std::filesystem::path timings_path(const std::filesystem::path& path) {
    return std::filesystem::path(path.string() + ".timings.csv");
}

void write_results(const ClusteringResult& result, const std::filesystem::path& path) {
    {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open output file '" + path.string() + "'");
        for (const auto label : result.labels.labels) out << label << '\n';
        if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
    }
    const auto tpath = timings_path(path);
    std::ofstream out(tpath);
    if (!out) throw std::runtime_error("cannot open output file '" + tpath.string() + "'");
    out << std::setprecision(9);
    out << "phase,seconds\n";
    out << "kernel_matrix," << result.timings.kernel_matrix_seconds << '\n';
    out << "pairwise_distances," << result.timings.pairwise_distances_seconds << '\n';
    out << "argmin_update," << result.timings.argmin_update_seconds << '\n';
    if (!out) throw std::runtime_error("failed writing '" + tpath.string() + "'");
}

#define KKM_INSTANTIATE_IO(T)                                                                  \
    template DenseMatrix<T> load_libsvm<T>(const std::filesystem::path&,                       \
                                           std::optional<std::size_t>,                         \
                                           std::optional<std::size_t>);                        \
    template DenseMatrix<T> load_csv<T>(const std::filesystem::path&, std::optional<std::size_t>, \
                                        std::optional<std::size_t>);                           \
    template DenseMatrix<T> load_dataset<T>(const std::filesystem::path&,                      \
                                            std::optional<std::size_t>,                        \
                                            std::optional<std::size_t>);                       \
    template DenseMatrix<T> uniform_dataset<T>(std::size_t, std::size_t, std::uint64_t);

KKM_INSTANTIATE_IO(float)
KKM_INSTANTIATE_IO(double)

#undef KKM_INSTANTIATE_IO

}  // namespace kkm::cli
