#include "exactkit/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "exactkit/error.hpp"

namespace exactkit {

namespace {

void require_same_modulus(const Matrix& a, const Matrix& b, const char* op) {
    if (a.modulus() != b.modulus())
        throw InputError(std::string(op) + ": modulus mismatch");
}

}  // namespace

Matrix::Matrix(unsigned p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(unsigned p, std::size_t rows, std::size_t cols, std::vector<Scalar> data)
    : p_(p), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw InputError("matrix: data length != rows*cols");
    for (Scalar v : data_)
        if (v >= p) throw InputError("matrix: entry not reduced mod p");
}

Matrix Matrix::from_rows(unsigned p, const std::vector<std::vector<long long>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.front().size() : 0;
    std::vector<Scalar> data;
    data.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw InputError("matrix: ragged rows");
        for (long long v : row) data.push_back(fp::reduce(v, p));
    }
    return {p, r, c, std::move(data)};
}

Matrix Matrix::from_rows(unsigned p, std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<long long>> tmp;
    for (auto r : rows) tmp.emplace_back(r);
    return from_rows(p, tmp);
}

Matrix Matrix::identity(unsigned p, std::size_t n) {
    std::vector<Scalar> d(n * n, 0);
    for (std::size_t k = 0; k < n; ++k) d[k * n + k] = 1;
    return {p, n, n, std::move(d)};
}

Matrix Matrix::column(unsigned p, const Vec& v) { return {p, v.size(), 1, v}; }

Matrix Matrix::from_columns(unsigned p, std::size_t height, const std::vector<Vec>& cols) {
    std::vector<Scalar> d(height * cols.size(), 0);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != height) throw InputError("from_columns: length mismatch");
        for (std::size_t r = 0; r < height; ++r) d[r * cols.size() + c] = cols[c][r];
    }
    return {p, height, cols.size(), std::move(d)};
}

Matrix Matrix::nilpotent_jordan(unsigned p, std::size_t n) {
    std::vector<Scalar> d(n * n, 0);
    for (std::size_t k = 0; k + 1 < n; ++k) d[(k + 1) * n + k] = 1;
    return {p, n, n, std::move(d)};
}

Vec Matrix::col(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Vec Matrix::row(std::size_t r) const {
    auto s = row_span(r);
    return {s.begin(), s.end()};
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Scalar v) { return v == 0; });
}

bool Matrix::is_identity() const { return square() && *this == identity(p_, rows_); }

Matrix Matrix::transpose() const {
    std::vector<Scalar> d(data_.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) d[c * rows_ + r] = data_[r * cols_ + c];
    return {p_, cols_, rows_, std::move(d)};
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    require_same_modulus(*this, rhs, "multiply");
    if (cols_ != rhs.rows_) throw InputError("multiply: inner dimension mismatch");
    std::vector<unsigned> acc(rows_ * rhs.cols_, 0);
    const unsigned p = p_;
    // Unreduced accumulation: cols * (p-1)^2 stays below 2^32 for cols < 65536.
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            Scalar a = data_[r * cols_ + k];
            if (!a) continue;
            const Scalar* brow = rhs.data_.data() + k * rhs.cols_;
            unsigned* out = acc.data() + r * rhs.cols_;
            for (std::size_t c = 0; c < rhs.cols_; ++c) out[c] += unsigned(a) * brow[c];
        }
    }
    std::vector<Scalar> d(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) d[k] = Scalar(acc[k] % p);
    return {p_, rows_, rhs.cols_, std::move(d)};
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    require_same_modulus(*this, rhs, "add");
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("add: shape mismatch");
    std::vector<Scalar> d(data_.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = fp::add(data_[k], rhs.data_[k], p_);
    return {p_, rows_, cols_, std::move(d)};
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    require_same_modulus(*this, rhs, "subtract");
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("subtract: shape mismatch");
    std::vector<Scalar> d(data_.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = fp::sub(data_[k], rhs.data_[k], p_);
    return {p_, rows_, cols_, std::move(d)};
}

Matrix Matrix::operator-() const {
    std::vector<Scalar> d(data_.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = fp::neg(data_[k], p_);
    return {p_, rows_, cols_, std::move(d)};
}

Matrix Matrix::scaled(Scalar s) const {
    std::vector<Scalar> d(data_.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = fp::mul(data_[k], s, p_);
    return {p_, rows_, cols_, std::move(d)};
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_) throw InputError("apply: length mismatch");
    Vec out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        unsigned acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc += unsigned(data_[r * cols_ + c]) * v[c];
        out[r] = Scalar(acc % p_);
    }
    return out;
}

Matrix Matrix::pow(unsigned e) const {
    if (!square()) throw InputError("pow: matrix not square");
    Matrix result = identity(p_, rows_);
    Matrix base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    std::vector<Scalar> d;
    d.reserve(idx.size() * cols_);
    for (std::size_t r : idx) {
        if (r >= rows_) throw InputError("select_rows: index out of range");
        auto s = row_span(r);
        d.insert(d.end(), s.begin(), s.end());
    }
    return {p_, idx.size(), cols_, std::move(d)};
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
    std::vector<Scalar> d(rows_ * idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (idx[k] >= cols_) throw InputError("select_cols: index out of range");
            d[r * idx.size() + k] = data_[r * cols_ + idx[k]];
        }
    return {p_, rows_, idx.size(), std::move(d)};
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw InputError("block: out of range");
    std::vector<Scalar> d(nr * nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) d[r * nc + c] = data_[(r0 + r) * cols_ + c0 + c];
    return {p_, nr, nc, std::move(d)};
}

Matrix Matrix::unflatten(unsigned p, std::size_t rows, std::size_t cols, const Vec& v) {
    return {p, rows, cols, v};
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ",[" : "[");
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << int((*this)(r, c));
        os << "]";
    }
    os << "]";
    return os.str();
}

Matrix hstack(const std::vector<Matrix>& parts) {
    if (parts.empty()) throw InputError("hstack: no parts");
    unsigned p = parts.front().modulus();
    std::size_t rows = parts.front().rows(), cols = 0;
    for (const auto& m : parts) {
        if (m.rows() != rows || m.modulus() != p) throw InputError("hstack: row/modulus mismatch");
        cols += m.cols();
    }
    std::vector<Scalar> d(rows * cols);
    std::size_t off = 0;
    for (const auto& m : parts) {
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) d[r * cols + off + c] = m(r, c);
        off += m.cols();
    }
    return {p, rows, cols, std::move(d)};
}

Matrix vstack(const std::vector<Matrix>& parts) {
    if (parts.empty()) throw InputError("vstack: no parts");
    unsigned p = parts.front().modulus();
    std::size_t cols = parts.front().cols(), rows = 0;
    for (const auto& m : parts) {
        if (m.cols() != cols || m.modulus() != p) throw InputError("vstack: col/modulus mismatch");
        rows += m.rows();
    }
    std::vector<Scalar> d;
    d.reserve(rows * cols);
    for (const auto& m : parts) d.insert(d.end(), m.data().begin(), m.data().end());
    return {p, rows, cols, std::move(d)};
}

Matrix block_diag(const std::vector<Matrix>& parts) {
    if (parts.empty()) throw InputError("block_diag: no parts");
    unsigned p = parts.front().modulus();
    std::size_t rows = 0, cols = 0;
    for (const auto& m : parts) {
        if (m.modulus() != p) throw InputError("block_diag: modulus mismatch");
        rows += m.rows();
        cols += m.cols();
    }
    std::vector<Scalar> d(rows * cols, 0);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& m : parts) {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) d[(r0 + r) * cols + c0 + c] = m(r, c);
        r0 += m.rows();
        c0 += m.cols();
    }
    return {p, rows, cols, std::move(d)};
}

Matrix kron(const Matrix& a, const Matrix& b) {
    require_same_modulus(a, b, "kron");
    unsigned p = a.modulus();
    std::size_t rows = a.rows() * b.rows(), cols = a.cols() * b.cols();
    std::vector<Scalar> d(rows * cols, 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Scalar s = a(i, j);
            if (!s) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    d[(i * b.rows() + k) * cols + j * b.cols() + l] = fp::mul(s, b(k, l), p);
        }
    return {p, rows, cols, std::move(d)};
}

Vec vec_add(const Vec& a, const Vec& b, unsigned p) {
    if (a.size() != b.size()) throw InputError("vec_add: length mismatch");
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = fp::add(a[k], b[k], p);
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b, unsigned p) {
    if (a.size() != b.size()) throw InputError("vec_sub: length mismatch");
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = fp::sub(a[k], b[k], p);
    return r;
}

Vec vec_scale(const Vec& a, Scalar s, unsigned p) {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = fp::mul(a[k], s, p);
    return r;
}

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; });
}

Vec unit_vec(std::size_t n, std::size_t k) {
    Vec v(n, 0);
    v.at(k) = 1;
    return v;
}

}  // namespace exactkit
