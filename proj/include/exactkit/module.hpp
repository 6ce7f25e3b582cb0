#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "exactkit/linalg.hpp"

namespace exactkit {

/// Ambient category: finite-dimensional modules over F_p[x]/(x^N).
struct CategoryConfig {
    unsigned p = 2;
    unsigned N = 1;

    void validate() const;
    friend bool operator==(const CategoryConfig&, const CategoryConfig&) = default;
};

/// A Lambda-module: a vector space F_p^dim with a nilpotent operator X, X^N = 0.
///
/// Identity of modules is literal: two modules are equal when they share the
/// config and the action matrix. Isomorphic but different modules are distinct.
class LambdaModule {
public:
    LambdaModule() = default;

    const CategoryConfig& config() const { return cfg_; }
    unsigned modulus() const { return cfg_.p; }
    std::size_t dim() const { return action_.rows(); }
    const Matrix& action() const { return action_; }

    friend bool operator==(const LambdaModule&, const LambdaModule&) = default;

private:
    friend LambdaModule make_module(const CategoryConfig& cfg, const Matrix& x);
    CategoryConfig cfg_;
    Matrix action_{2, 0, 0};
};

/// Validates X square, entries mod p and X^N = 0.
LambdaModule make_module(const CategoryConfig& cfg, const Matrix& x);
LambdaModule zero_module(const CategoryConfig& cfg);
/// M_i = Lambda/(x^i): dimension i with the nilpotent Jordan block as action.
LambdaModule indecomposable(const CategoryConfig& cfg, unsigned i);

/// A Lambda-linear map src -> tgt, stored as a tgt.dim x src.dim matrix.
class ModuleMorphism {
public:
    ModuleMorphism() = default;
    /// Throws ValidationError unless mat * X_src = X_tgt * mat.
    ModuleMorphism(LambdaModule src, LambdaModule tgt, Matrix mat);

    const LambdaModule& src() const { return src_; }
    const LambdaModule& tgt() const { return tgt_; }
    const Matrix& mat() const { return mat_; }

    friend bool operator==(const ModuleMorphism&, const ModuleMorphism&) = default;

private:
    LambdaModule src_;
    LambdaModule tgt_;
    Matrix mat_{2, 0, 0};
};

ModuleMorphism identity_morphism(const LambdaModule& m);
ModuleMorphism zero_morphism(const LambdaModule& src, const LambdaModule& tgt);
/// g after f; requires f.tgt() == g.src().
ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f);
ModuleMorphism add(const ModuleMorphism& f, const ModuleMorphism& g);
ModuleMorphism subtract(const ModuleMorphism& f, const ModuleMorphism& g);
ModuleMorphism negate(const ModuleMorphism& f);
/// Inverse of an isomorphism; throws ValidationError otherwise.
ModuleMorphism inverse(const ModuleMorphism& f);

struct MorphismKind {
    bool mono = false;
    bool epi = false;
    bool iso = false;
    bool zero = false;
};
MorphismKind classify_morphism(const ModuleMorphism& f);
bool is_mono(const ModuleMorphism& f);
bool is_epi(const ModuleMorphism& f);
bool is_iso(const ModuleMorphism& f);

/// Jordan type as a weakly decreasing partition, from the rank sequence rank(X^k).
std::vector<unsigned> jordan_type(const LambdaModule& m);
/// Direct sum of M_{lambda_1}, M_{lambda_2}, ... in the given order.
LambdaModule canonical_module(const CategoryConfig& cfg, const std::vector<unsigned>& partition);
/// Isomorphism m -> canonical_module(jordan_type(m)). Identity when m is canonical.
ModuleMorphism canonical_iso(const LambdaModule& m);

/// Basis of Hom(a, b) as a vector space, in canonical (reduced echelon) order.
std::vector<ModuleMorphism> hom_basis(const LambdaModule& a, const LambdaModule& b);

/// Hom(a, b) with its basis and coordinates of morphisms in that basis.
class HomSpace {
public:
    HomSpace(const LambdaModule& a, const LambdaModule& b);

    const LambdaModule& src() const { return src_; }
    const LambdaModule& tgt() const { return tgt_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<ModuleMorphism>& basis() const { return basis_; }
    /// Flattened basis morphisms as columns.
    const Matrix& columns() const { return columns_; }

    Vec coords(const ModuleMorphism& f) const;
    ModuleMorphism element(const Vec& coords) const;

private:
    LambdaModule src_, tgt_;
    std::vector<ModuleMorphism> basis_;
    Matrix columns_{2, 0, 0};
    Subspace span_;
};

struct KernelData {
    LambdaModule object;
    ModuleMorphism map;  ///< k_f: object -> f.src(), mono
};

struct CokernelData {
    LambdaModule object;
    ModuleMorphism map;  ///< c_f: f.tgt() -> object, epi
    Matrix section;      ///< linear right inverse of map (not Lambda-linear in general)
};

struct ImageFactorization {
    ModuleMorphism epi;   ///< e: f.src() -> Im f
    ModuleMorphism mono;  ///< m: Im f -> f.tgt()
};

KernelData kernel(const ModuleMorphism& f);
CokernelData cokernel(const ModuleMorphism& f);
ImageFactorization image_factorization(const ModuleMorphism& f);

struct DirectSum {
    LambdaModule sum;
    std::vector<ModuleMorphism> inclusions;
    std::vector<ModuleMorphism> projections;
};

DirectSum direct_sum(const CategoryConfig& cfg, const std::vector<LambdaModule>& parts);
DirectSum direct_sum(const LambdaModule& a, const LambdaModule& b);
/// Block map f1 (+) f2 between the direct sums.
ModuleMorphism direct_sum_map(const ModuleMorphism& f1, const ModuleMorphism& f2);
/// Map A -> B1 (+) B2 with components f1, f2 stacked.
ModuleMorphism stack_maps(const ModuleMorphism& f1, const ModuleMorphism& f2);
/// Map A1 (+) A2 -> B with components f1, f2 side by side.
ModuleMorphism join_maps(const ModuleMorphism& f1, const ModuleMorphism& f2);

std::string describe(const LambdaModule& m);
std::string partition_string(const std::vector<unsigned>& partition);

}  // namespace exactkit
