#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pmod/field.hpp"

namespace pmod {

/// Dense row-major matrix over 𝔽_p. 0×n and n×0 matrices are legal and stand
/// for the maps into and out of the zero space.
class Matrix {
public:
    Matrix() : Matrix(0, 0, 2) {}
    Matrix(std::size_t rows, std::size_t cols, Residue modulus);

    static Matrix identity(std::size_t n, Residue modulus);
    static Matrix zero(std::size_t rows, std::size_t cols, Residue modulus)
    {
        return Matrix(rows, cols, modulus);
    }
    /// Entries are reduced mod p. All rows must have the same length.
    static Matrix from_rows(Residue modulus, std::initializer_list<std::initializer_list<std::int64_t>> rows);
    static Matrix from_rows(Residue modulus, const std::vector<std::vector<Residue>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Residue modulus() const { return modulus_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Residue value);

    std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Residue> entries() const { return data_; }

    bool is_zero() const;
    bool is_identity() const;
    bool is_square() const { return rows_ == cols_; }

    Matrix transposed() const;

    friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
    friend bool operator==(const Matrix& lhs, const Matrix& rhs) = default;

    /// `[a b; c d]`; `[]` when there are no entries.
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const Matrix& m)
    {
        return os << m.rows_ << "x" << m.cols_ << " " << m.str();
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    Residue modulus_;
    std::vector<Residue> data_;
};

/// Exact rank by Gaussian elimination.
std::size_t rank(const Matrix& m);

/// Square and full rank.
bool is_invertible(const Matrix& m);

/// Reduced row echelon form of the rows of a matrix; rows are kept in the
/// order their pivots were found. Shared by the rank routine, the cokernel
/// computation and the barcode reduction.
class RowEchelon {
public:
    RowEchelon(std::size_t width, Residue modulus) : width_(width), modulus_(modulus) {}

    std::size_t width() const { return width_; }
    std::size_t size() const { return rows_.size(); }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Reduces v against the stored rows in place; v has width() entries.
    void reduce(std::span<Residue> v) const;

    /// Adds v to the span if it is independent. Returns true if it was added.
    bool insert(std::vector<Residue> v);

    bool is_pivot(std::size_t column) const;

private:
    std::size_t width_;
    Residue modulus_;
    std::vector<std::vector<Residue>> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace pmod
