#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "exactkit/field.hpp"

namespace exactkit {

/// Coordinate vector over F_p. The modulus travels with the surrounding object.
using Vec = std::vector<Scalar>;

/// Dense row-major matrix over the prime field F_p.
///
/// Matrices are immutable values: every operation returns a fresh matrix. Empty
/// shapes (0 rows or 0 columns) are legal and arise naturally from zero modules.
class Matrix {
public:
    Matrix() = default;
    Matrix(unsigned p, std::size_t rows, std::size_t cols);
    /// Entries are given row-major and must already be reduced mod p.
    Matrix(unsigned p, std::size_t rows, std::size_t cols, std::vector<Scalar> data);

    static Matrix from_rows(unsigned p, const std::vector<std::vector<long long>>& rows);
    static Matrix from_rows(unsigned p, std::initializer_list<std::initializer_list<long long>> rows);
    static Matrix identity(unsigned p, std::size_t n);
    static Matrix zero(unsigned p, std::size_t rows, std::size_t cols) { return {p, rows, cols}; }
    static Matrix column(unsigned p, const Vec& v);
    /// Columns of the result are the given vectors, each of length `height`.
    static Matrix from_columns(unsigned p, std::size_t height, const std::vector<Vec>& cols);
    /// Jordan block of size n with ones on the subdiagonal: e_k -> e_{k+1}.
    static Matrix nilpotent_jordan(unsigned p, std::size_t n);

    unsigned modulus() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    bool square() const { return rows_ == cols_; }

    Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const Scalar> row_span(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    const std::vector<Scalar>& data() const { return data_; }

    Vec col(std::size_t c) const;
    Vec row(std::size_t r) const;
    bool is_zero() const;
    bool is_identity() const;

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator-() const;
    Matrix scaled(Scalar s) const;
    Vec apply(const Vec& v) const;
    Matrix pow(unsigned e) const;

    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    Matrix select_cols(const std::vector<std::size_t>& idx) const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    /// Row-major flattening into a single column vector.
    Vec flatten() const { return data_; }
    static Matrix unflatten(unsigned p, std::size_t rows, std::size_t cols, const Vec& v);

    friend bool operator==(const Matrix&, const Matrix&) = default;

    std::string to_string() const;

private:
    unsigned p_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix hstack(const std::vector<Matrix>& parts);
Matrix vstack(const std::vector<Matrix>& parts);
Matrix block_diag(const std::vector<Matrix>& parts);
/// Kronecker product. With row-major flattening, vec(L*G*R) = kron(L, R^T) * vec(G).
Matrix kron(const Matrix& a, const Matrix& b);

Vec vec_add(const Vec& a, const Vec& b, unsigned p);
Vec vec_sub(const Vec& a, const Vec& b, unsigned p);
Vec vec_scale(const Vec& a, Scalar s, unsigned p);
bool vec_is_zero(const Vec& v);
Vec unit_vec(std::size_t n, std::size_t k);

}  // namespace exactkit
