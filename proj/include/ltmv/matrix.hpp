#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ltmv {

// Dense row-major matrix of doubles. Rows are the unit every code strategy
// operates on, so the only structured accessor is a row span.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::uint64_t rows, std::uint64_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    Matrix(std::uint64_t rows, std::uint64_t cols, std::vector<double> data);

    std::uint64_t rows() const { return rows_; }
    std::uint64_t cols() const { return cols_; }

    std::span<double> row(std::uint64_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::uint64_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    double& at(std::uint64_t i, std::uint64_t j) { return data_[i * cols_ + j]; }
    double at(std::uint64_t i, std::uint64_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool operator==(const Matrix& other) const = default;

private:
    std::uint64_t rows_ = 0;
    std::uint64_t cols_ = 0;
    std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);

// b = A x. The reference computation used everywhere a decoded result is
// checked against the direct product.
std::vector<double> matvec(const Matrix& a, std::span<const double> x);

// Binary matrix file: magic "CMV1", u64 row count, u64 column count, then
// row-major f64 payload, all little-endian.
void save_matrix(const Matrix& m, const std::string& path);
Matrix load_matrix(const std::string& path);

// Vectors are stored as n x 1 matrices.
void save_vector(std::span<const double> v, const std::string& path);
std::vector<double> load_vector(const std::string& path);

}  // namespace ltmv
