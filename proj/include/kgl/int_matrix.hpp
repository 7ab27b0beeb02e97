#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cstddef>
#include <string>
#include <vector>

namespace kgl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Dense matrix over Z with exact (arbitrary-precision) entries.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
    static IntMatrix from_columns(std::size_t rows, const std::vector<IntVec>& cols);
    static IntMatrix diagonal(const IntVec& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntVec column(std::size_t j) const;
    IntVec row(std::size_t i) const;
    void set_column(std::size_t j, const IntVec& v);

    IntMatrix transpose() const;
    bool is_zero() const;
    bool operator==(const IntMatrix& other) const = default;

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    IntMatrix operator-() const;
    IntMatrix scaled(const Int& c) const;

    IntVec apply(const IntVec& v) const;  // matrix * column vector

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& c);  // row dst += c * row src
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& c);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    /// Columns of `this` followed by columns of `rhs`; row counts must agree.
    IntMatrix hstack(const IntMatrix& rhs) const;
    IntMatrix take_columns(std::size_t first, std::size_t count) const;

    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

IntVec vec_add(const IntVec& a, const IntVec& b);
IntVec vec_sub(const IntVec& a, const IntVec& b);
IntVec vec_scaled(const IntVec& a, const Int& c);
bool vec_is_zero(const IntVec& a);

/// a mod m normalized into [0, m); m > 0.
Int mod_floor(const Int& a, const Int& m);

}  // namespace kgl
