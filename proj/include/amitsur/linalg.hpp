#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "amitsur/modular.hpp"

namespace amitsur {

// Dense row-major matrix over Z/nZ. The modulus travels separately as a Zn.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Coeff& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Coeff operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Coeff> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Coeff> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    Vec column(std::size_t c) const;
    void set_column(std::size_t c, std::span<const Coeff> v);

    Matrix transpose() const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    Vec data_;
};

Matrix multiply(const Zn& zn, const Matrix& a, const Matrix& b);
Vec apply(const Zn& zn, const Matrix& m, std::span<const Coeff> x);

// Howell normal form of the row span of a matrix: nonzero rows only, each
// pivot a divisor of n, entries above a pivot reduced below it, and for every
// column c the rows with pivot >= c span exactly the vectors of the row space
// that vanish before c.
struct HowellForm {
    Matrix rows;
    std::vector<std::size_t> pivot_cols;

    // Number of vectors in the row span.
    boost::multiprecision::cpp_int span_size(const Zn& zn) const;
    // Reduce v against the form; the result is zero iff v lies in the span.
    Vec reduce(const Zn& zn, std::span<const Coeff> v) const;
};

HowellForm howell_form(const Zn& zn, const Matrix& m);

// Generators (as rows) of the kernel {x : m x = 0}.
Matrix kernel(const Zn& zn, const Matrix& m);
boost::multiprecision::cpp_int kernel_size(const Zn& zn, const Matrix& m);

// Some x with m x = b, or nothing.
std::optional<Vec> solve(const Zn& zn, const Matrix& m, std::span<const Coeff> b);

bool is_injective(const Zn& zn, const Matrix& m);
bool is_bijective(const Zn& zn, const Matrix& m);

}  // namespace amitsur
