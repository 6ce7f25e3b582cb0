#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "exactkit/matrix.hpp"

namespace exactkit {

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row, increasing
};

/// Reduced row-echelon form by Gauss-Jordan elimination.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Some X with a*X = b, or nullopt when the system is inconsistent. Free
/// variables are set to zero, so the particular solution is deterministic.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

/// Inverse of a square matrix, nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// A subspace of F_p^n in canonical form.
///
/// The basis matrix is in reduced column echelon form (its transpose is in
/// reduced row-echelon form), so two subspaces are equal exactly when their basis
/// matrices are identical.
class Subspace {
public:
    Subspace() = default;
    /// Zero subspace of F_p^ambient.
    Subspace(unsigned p, std::size_t ambient);

    /// Span of the columns of `generators` (which must have `ambient` rows).
    static Subspace span(const Matrix& generators);
    static Subspace span(unsigned p, std::size_t ambient, const std::vector<Vec>& generators);
    static Subspace full(unsigned p, std::size_t ambient);

    unsigned modulus() const { return basis_.modulus(); }
    std::size_t ambient() const { return basis_.rows(); }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }
    Vec basis_vector(std::size_t k) const { return basis_.col(k); }
    /// Row index of the leading entry of each basis column.
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Representative of v + U with zeros at every pivot row. Linear in v.
    Vec reduce(const Vec& v) const;
    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;

    std::vector<Vec> elements() const;  ///< all p^dim members, deterministic order

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

private:
    Matrix basis_{2, 0, 0};
    std::vector<std::size_t> pivots_;
};

Subspace kernel_basis(const Matrix& m);
Subspace image_basis(const Matrix& m);

bool member(const Subspace& u, const Vec& v);
Subspace sum(const Subspace& u, const Subspace& v);
Subspace intersect(const Subspace& u, const Subspace& v);
bool equal(const Subspace& u, const Subspace& v);
/// Preimage {x : m x in u} of a subspace under a linear map.
Subspace preimage(const Matrix& m, const Subspace& u);
/// Image {m x : x in u}.
Subspace image_of(const Matrix& m, const Subspace& u);

/// Every subspace of F_p^n, ordered by dimension, then pivot set, then free entries.
std::vector<Subspace> all_subspaces(unsigned p, std::size_t n);
/// Number of subspaces of F_p^n (sum of Gaussian binomials).
unsigned long long count_subspaces(unsigned p, std::size_t n);

/// Every vector of F_p^n in lexicographic order (first coordinate slowest).
std::vector<Vec> all_vectors(unsigned p, std::size_t n);

}  // namespace exactkit
