#include "pmod/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "pmod/error.hpp"
#include "pmod/simd/kernels.hpp"

namespace pmod {

Matrix::Matrix(std::size_t rows, std::size_t cols, Residue modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), data_(rows * cols, 0)
{
}

Matrix Matrix::identity(std::size_t n, Residue modulus)
{
    Matrix m(n, n, modulus);
    for (std::size_t i = 0; i < n; ++i)
        m.data_[i * n + i] = 1 % modulus;
    return m;
}

Matrix Matrix::from_rows(Residue modulus, std::initializer_list<std::initializer_list<std::int64_t>> rows)
{
    const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    Matrix m(rows.size(), cols, modulus);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != cols)
            throw DimensionError("ragged matrix rows");
        std::size_t c = 0;
        for (const auto v : row)
            m.data_[r * cols + c++] = reduce_mod(v, modulus);
        ++r;
    }
    return m;
}

Matrix Matrix::from_rows(Residue modulus, const std::vector<std::vector<Residue>>& rows, std::size_t cols)
{
    Matrix m(rows.size(), cols, modulus);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw DimensionError("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c)
            m.data_[r * cols + c] = rows[r][c] % modulus;
    }
    return m;
}

void Matrix::set(std::size_t r, std::size_t c, Residue value)
{
    data_[r * cols_ + c] = value % modulus_;
}

bool Matrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](Residue v) { return v == 0; });
}

bool Matrix::is_identity() const
{
    if (!is_square())
        return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if ((*this)(r, c) != (r == c ? 1u : 0u))
                return false;
    return true;
}

Matrix Matrix::transposed() const
{
    Matrix t(cols_, rows_, modulus_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t.data_[c * rows_ + r] = (*this)(r, c);
    return t;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs)
{
    if (lhs.modulus_ != rhs.modulus_)
        throw DimensionError("matrix product over different fields");
    if (lhs.cols_ != rhs.rows_)
        throw DimensionError("cannot multiply " + std::to_string(lhs.rows_) + "x" + std::to_string(lhs.cols_) +
                             " by " + std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_));
    const auto& k = simd::active_kernels();
    Matrix out(lhs.rows_, rhs.cols_, lhs.modulus_);
    for (std::size_t i = 0; i < lhs.rows_; ++i)
        for (std::size_t j = 0; j < lhs.cols_; ++j)
            k.axpy(out.row(i), rhs.row(j), lhs(i, j), lhs.modulus_);
    return out;
}

std::string Matrix::str() const
{
    if (empty())
        return "[]";
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r > 0)
            os << "; ";
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c > 0)
                os << ' ';
            os << (*this)(r, c);
        }
    }
    os << ']';
    return os.str();
}

std::size_t rank(const Matrix& m)
{
    RowEchelon echelon(m.cols(), m.modulus());
    for (std::size_t r = 0; r < m.rows(); ++r)
        echelon.insert(std::vector<Residue>(m.row(r).begin(), m.row(r).end()));
    return echelon.size();
}

bool is_invertible(const Matrix& m)
{
    return m.is_square() && rank(m) == m.rows();
}

void RowEchelon::reduce(std::span<Residue> v) const
{
    const auto& k = simd::active_kernels();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Residue c = v[pivots_[i]];
        if (c != 0)
            k.axpy(v, rows_[i], neg_mod(c, modulus_), modulus_);
    }
}

bool RowEchelon::insert(std::vector<Residue> v)
{
    reduce(v);
    const auto nz = std::find_if(v.begin(), v.end(), [](Residue x) { return x != 0; });
    if (nz == v.end())
        return false;
    const auto pivot = static_cast<std::size_t>(nz - v.begin());
    const auto& k = simd::active_kernels();
    k.scale(v, inv_mod(v[pivot], modulus_), modulus_);
    // Keep existing rows fully reduced against the new pivot.
    for (auto& row : rows_)
        if (row[pivot] != 0)
            k.axpy(row, v, neg_mod(row[pivot], modulus_), modulus_);
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
}

bool RowEchelon::is_pivot(std::size_t column) const
{
    return std::find(pivots_.begin(), pivots_.end(), column) != pivots_.end();
}

} // namespace pmod
