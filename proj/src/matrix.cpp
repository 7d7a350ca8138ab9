#include "ltmv/matrix.hpp"

#include <bit>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include "ltmv/binio.hpp"

namespace ltmv {

namespace {

constexpr char kMagic[4] = {'C', 'M', 'V', '1'};

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FileHandle = std::unique_ptr<std::FILE, FileCloser>;

FileHandle open_file(const std::string& path, const char* mode) {
    FileHandle f(std::fopen(path.c_str(), mode));
    if (!f) throw std::runtime_error("cannot open " + path);
    return f;
}

}  // namespace

Matrix::Matrix(std::uint64_t rows, std::uint64_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw std::invalid_argument("matrix data size does not match dimensions");
}

double dot(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

std::vector<double> matvec(const Matrix& a, std::span<const double> x) {
    if (x.size() != a.cols()) throw std::invalid_argument("matvec dimension mismatch");
    std::vector<double> out(a.rows());
    for (std::uint64_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), x);
    return out;
}

void save_matrix(const Matrix& m, const std::string& path) {
    auto f = open_file(path, "wb");
    std::vector<std::uint8_t> header;
    header.insert(header.end(), kMagic, kMagic + 4);
    put_u64(header, m.rows());
    put_u64(header, m.cols());
    std::vector<std::uint8_t> body;
    body.reserve(m.data().size() * 8);
    for (double v : m.data()) put_f64(body, v);
    if (std::fwrite(header.data(), 1, header.size(), f.get()) != header.size() ||
        std::fwrite(body.data(), 1, body.size(), f.get()) != body.size())
        throw std::runtime_error("short write to " + path);
}

Matrix load_matrix(const std::string& path) {
    auto f = open_file(path, "rb");
    std::uint8_t header[20];
    if (std::fread(header, 1, sizeof header, f.get()) != sizeof header)
        throw std::runtime_error("truncated matrix file " + path);
    if (!std::equal(kMagic, kMagic + 4, header))
        throw std::runtime_error("bad magic in matrix file " + path);
    const std::uint64_t rows = get_u64(header + 4);
    const std::uint64_t cols = get_u64(header + 12);
    const std::uint64_t count = rows * cols;
    std::vector<std::uint8_t> raw(count * 8);
    if (std::fread(raw.data(), 1, raw.size(), f.get()) != raw.size())
        throw std::runtime_error("truncated matrix payload in " + path);
    std::vector<double> data(count);
    for (std::uint64_t i = 0; i < count; ++i) data[i] = get_f64(raw.data() + i * 8);
    return Matrix(rows, cols, std::move(data));
}

void save_vector(std::span<const double> v, const std::string& path) {
    Matrix m(v.size(), 1);
    std::copy(v.begin(), v.end(), m.data().begin());
    save_matrix(m, path);
}

std::vector<double> load_vector(const std::string& path) {
    Matrix m = load_matrix(path);
    if (m.cols() != 1) throw std::runtime_error(path + " is not a column vector");
    return m.data();
}

}  // namespace ltmv
