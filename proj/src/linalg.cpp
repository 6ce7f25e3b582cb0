#include "exactkit/linalg.hpp"

#include <algorithm>
#include <functional>

#include "exactkit/error.hpp"

namespace exactkit {

namespace {

// In-place Gauss-Jordan on a row-major buffer; returns pivot columns.
std::vector<std::size_t> eliminate(std::vector<Scalar>& d, std::size_t rows, std::size_t cols,
                                   unsigned p, std::size_t col_limit) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < col_limit && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && d[sel * cols + c] == 0) ++sel;
        if (sel == rows) continue;
        if (sel != r)
            std::swap_ranges(d.begin() + sel * cols, d.begin() + (sel + 1) * cols, d.begin() + r * cols);
        Scalar inv = fp::inv(d[r * cols + c], p);
        if (inv != 1)
            for (std::size_t k = c; k < cols; ++k) d[r * cols + k] = fp::mul(d[r * cols + k], inv, p);
        for (std::size_t o = 0; o < rows; ++o) {
            if (o == r) continue;
            Scalar f = d[o * cols + c];
            if (!f) continue;
            Scalar nf = fp::neg(f, p);
            for (std::size_t k = c; k < cols; ++k)
                if (Scalar v = d[r * cols + k]) d[o * cols + k] = fp::add(d[o * cols + k], fp::mul(nf, v, p), p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

RrefResult rref(const Matrix& m) {
    std::vector<Scalar> d = m.data();
    auto piv = eliminate(d, m.rows(), m.cols(), m.modulus(), m.cols());
    return {Matrix(m.modulus(), m.rows(), m.cols(), std::move(d)), std::move(piv)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw InputError("solve: a.rows != b.rows");
    if (a.modulus() != b.modulus()) throw InputError("solve: modulus mismatch");
    const unsigned p = a.modulus();
    const std::size_t n = a.cols(), k = b.cols(), cols = n + k;
    std::vector<Scalar> d(a.rows() * cols);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::copy_n(a.row_span(r).begin(), n, d.begin() + r * cols);
        std::copy_n(b.row_span(r).begin(), k, d.begin() + r * cols + n);
    }
    auto piv = eliminate(d, a.rows(), cols, p, n);
    // Inconsistent iff a zero row of the left block has a nonzero right block.
    for (std::size_t r = piv.size(); r < a.rows(); ++r)
        for (std::size_t c = n; c < cols; ++c)
            if (d[r * cols + c]) return std::nullopt;
    std::vector<Scalar> x(n * k, 0);
    for (std::size_t r = 0; r < piv.size(); ++r)
        for (std::size_t c = 0; c < k; ++c) x[piv[r] * k + c] = d[r * cols + n + c];
    return Matrix(p, n, k, std::move(x));
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (!m.square()) throw InputError("inverse: matrix not square");
    if (rank(m) != m.rows()) return std::nullopt;
    return solve(m, Matrix::identity(m.modulus(), m.rows()));
}

Subspace::Subspace(unsigned p, std::size_t ambient) : basis_(p, ambient, 0) {}

Subspace Subspace::span(const Matrix& generators) {
    auto rr = rref(generators.transpose());
    Subspace s;
    const std::size_t k = rr.pivots.size();
    std::vector<std::size_t> keep(k);
    for (std::size_t r = 0; r < k; ++r) keep[r] = r;
    s.basis_ = rr.reduced.select_rows(keep).transpose();
    s.pivots_ = std::move(rr.pivots);
    return s;
}

Subspace Subspace::span(unsigned p, std::size_t ambient, const std::vector<Vec>& generators) {
    return span(Matrix::from_columns(p, ambient, generators));
}

Subspace Subspace::full(unsigned p, std::size_t ambient) { return span(Matrix::identity(p, ambient)); }

Vec Subspace::reduce(const Vec& v) const {
    if (v.size() != ambient()) throw InputError("subspace reduce: ambient mismatch");
    const unsigned p = modulus();
    Vec out = v;
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
        Scalar f = out[pivots_[r]];
        if (!f) continue;
        Scalar nf = fp::neg(f, p);
        for (std::size_t i = 0; i < out.size(); ++i)
            if (Scalar b = basis_(i, r)) out[i] = fp::add(out[i], fp::mul(nf, b, p), p);
    }
    return out;
}

bool Subspace::contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient() != ambient()) throw InputError("subspace contains: ambient mismatch");
    for (std::size_t k = 0; k < other.dim(); ++k)
        if (!contains(other.basis_vector(k))) return false;
    return true;
}

std::vector<Vec> Subspace::elements() const {
    std::vector<Vec> out;
    for (const Vec& c : all_vectors(modulus(), dim())) out.push_back(basis_.apply(c));
    return out;
}

Subspace kernel_basis(const Matrix& m) {
    const unsigned p = m.modulus();
    auto rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : rr.pivots) is_pivot[c] = true;
    std::vector<Vec> gens;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols(), 0);
        v[f] = 1;
        for (std::size_t r = 0; r < rr.pivots.size(); ++r) v[rr.pivots[r]] = fp::neg(rr.reduced(r, f), p);
        gens.push_back(std::move(v));
    }
    return Subspace::span(p, m.cols(), gens);
}

Subspace image_basis(const Matrix& m) { return Subspace::span(m); }

bool member(const Subspace& u, const Vec& v) { return u.contains(v); }

Subspace sum(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient() || u.modulus() != v.modulus()) throw InputError("sum: ambient mismatch");
    return Subspace::span(hstack({u.basis(), v.basis()}));
}

Subspace intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient() || u.modulus() != v.modulus())
        throw InputError("intersect: ambient mismatch");
    if (u.dim() == 0 || v.dim() == 0) return Subspace(u.modulus(), u.ambient());
    auto ker = kernel_basis(hstack({u.basis(), -v.basis()}));
    std::vector<std::size_t> top(u.dim());
    for (std::size_t k = 0; k < top.size(); ++k) top[k] = k;
    return Subspace::span(u.basis() * ker.basis().select_rows(top));
}

bool equal(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient() || u.modulus() != v.modulus()) throw InputError("equal: ambient mismatch");
    return u == v;
}

Subspace preimage(const Matrix& m, const Subspace& u) {
    if (m.rows() != u.ambient()) throw InputError("preimage: shape mismatch");
    // x with m x in u  <=>  reduce(m x) = 0; reduce is linear with matrix I - B E_piv.
    const unsigned p = m.modulus();
    std::vector<Vec> cols;
    for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(u.reduce(m.col(c)));
    return kernel_basis(Matrix::from_columns(p, m.rows(), cols));
}

Subspace image_of(const Matrix& m, const Subspace& u) {
    if (m.cols() != u.ambient()) throw InputError("image_of: shape mismatch");
    return Subspace::span(m * u.basis());
}

std::vector<Vec> all_vectors(unsigned p, std::size_t n) {
    std::vector<Vec> out;
    Vec v(n, 0);
    while (true) {
        out.push_back(v);
        std::size_t k = n;
        while (k > 0) {
            --k;
            if (++v[k] < p) break;
            v[k] = 0;
            if (k == 0) return out;
        }
        if (n == 0) return out;
    }
}

std::vector<Subspace> all_subspaces(unsigned p, std::size_t n) {
    std::vector<Subspace> out;
    for (std::size_t k = 0; k <= n; ++k) {
        // Pivot sets of size k in lexicographic order.
        std::vector<std::size_t> piv(k);
        for (std::size_t i = 0; i < k; ++i) piv[i] = i;
        while (true) {
            std::vector<bool> is_piv(n, false);
            for (auto c : piv) is_piv[c] = true;
            std::vector<std::pair<std::size_t, std::size_t>> free;  // (row, col)
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = piv[r] + 1; c < n; ++c)
                    if (!is_piv[c]) free.emplace_back(r, c);
            for (const Vec& assign : all_vectors(p, free.size())) {
                std::vector<Scalar> rows(k * n, 0);
                for (std::size_t r = 0; r < k; ++r) rows[r * n + piv[r]] = 1;
                for (std::size_t f = 0; f < free.size(); ++f)
                    rows[free[f].first * n + free[f].second] = assign[f];
                out.push_back(Subspace::span(Matrix(p, k, n, std::move(rows)).transpose()));
            }
            // next combination
            std::size_t i = k;
            while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++piv[i - 1];
            for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
        }
    }
    return out;
}

unsigned long long count_subspaces(unsigned p, std::size_t n) {
    // Gaussian binomial recurrence G(n,k) = G(n-1,k-1) + p^k G(n-1,k).
    std::vector<unsigned long long> g(n + 1, 0);
    g[0] = 1;
    for (std::size_t m = 1; m <= n; ++m)
        for (std::size_t k = m; k >= 1; --k) {
            unsigned long long pk = 1;
            for (std::size_t t = 0; t < k; ++t) pk *= p;
            g[k] = g[k - 1] + pk * g[k];
        }
    unsigned long long total = 0;
    for (auto v : g) total += v;
    return total;
}

}  // namespace exactkit
