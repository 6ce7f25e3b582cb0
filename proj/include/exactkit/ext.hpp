#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "exactkit/ses.hpp"

namespace exactkit {

/// 0 -> omega --iota--> P --pi--> c -> 0 with P a sum of copies of M_N.
struct ProjPresentation {
    LambdaModule c;
    LambdaModule P;
    ModuleMorphism pi;
    LambdaModule omega;
    ModuleMorphism iota;
    ShortExactSeq seq;
    /// Images pi(generator_t) in c, one per Jordan part of c.
    std::vector<Vec> generator_images;
};

ProjPresentation projective_presentation(const LambdaModule& c);

/// Ext(c, a) = Hom(omega, a) / restriction of Hom(P, a), with canonical coordinates.
class ExtBasis {
public:
    ExtBasis(const LambdaModule& c, const LambdaModule& a);

    const LambdaModule& c() const { return c_; }
    const LambdaModule& a() const { return a_; }
    std::size_t dim() const { return reps_.size(); }
    const std::vector<ShortExactSeq>& reps() const { return reps_; }
    const ProjPresentation& presentation() const { return pres_; }
    const HomSpace& syzygy_hom() const { return hom_; }
    /// Restriction image inside Hom(omega, a) coordinates.
    const Subspace& restriction_image() const { return restr_; }

    /// Coordinates of [e]. Requires e.c() == c and e.a() == a literally.
    Vec classify(const ShortExactSeq& e) const;
    /// Coordinates of the class represented by phi: omega -> a.
    Vec coords_of_cocycle(const ModuleMorphism& phi) const;
    /// A representative of the class with the given coordinates.
    ShortExactSeq realize(const Vec& coords) const;
    /// The cocycle omega -> a used by realize.
    ModuleMorphism cocycle(const Vec& coords) const;

private:
    LambdaModule c_, a_;
    ProjPresentation pres_;
    HomSpace hom_;
    Subspace restr_;
    Matrix coord_map_;  ///< vec(phi) -> quotient coordinates
    Matrix section_;    ///< quotient coordinates -> Hom(omega, a) coordinates
    std::vector<ShortExactSeq> reps_;
};

/// An element of Ext(c, a) with respect to a fixed basis.
struct ExtClass {
    std::shared_ptr<const ExtBasis> basis;
    Vec coords;
};

ExtClass classify(const ShortExactSeq& e, const std::shared_ptr<const ExtBasis>& basis);
ShortExactSeq realize(const ExtClass& cls);

/// Write-once table of Ext bases keyed by the literal (c, a) pair. Readers never see
/// a partially built entry; concurrent builders of one key agree on the result.
class ExtCache {
public:
    std::shared_ptr<const ExtBasis> get(const LambdaModule& c, const LambdaModule& a);
    std::size_t size() const;

private:
    mutable std::shared_mutex mu_;
    std::map<std::string, std::shared_ptr<const ExtBasis>> table_;
};

std::string module_key(const LambdaModule& m);

/// Matrix of Ext(c, f): Ext(c, f.src) -> Ext(c, f.tgt), columns classify(pushout(rep_k, f)).
Matrix ext_covariant_matrix(const ExtBasis& src, const ExtBasis& tgt, const ModuleMorphism& f);
Matrix ext_covariant_matrix(ExtCache& cache, const LambdaModule& c, const ModuleMorphism& f);
/// Matrix of Ext(g, a): Ext(g.tgt, a) -> Ext(g.src, a), columns classify(pullback(rep_k, g)).
Matrix ext_contravariant_matrix(const ExtBasis& src, const ExtBasis& tgt, const ModuleMorphism& g);
Matrix ext_contravariant_matrix(ExtCache& cache, const ModuleMorphism& g, const LambdaModule& a);

struct ConnectingMaps {
    Matrix partial;  ///< Hom(x, c) -> Ext(x, a)
    Matrix delta;    ///< Hom(a, x) -> Ext(c, x)
};
ConnectingMaps connecting_matrices(ExtCache& cache, const ShortExactSeq& e, const LambdaModule& x);

struct LesPosition {
    std::string name;
    bool exact = false;
};
struct LesReport {
    std::vector<LesPosition> positions;
    bool ok() const;
};
/// Exactness at every position of the covariant six-term sequence Hom(x,-)/Ext(x,-)
/// and of the contravariant one Hom(-,x)/Ext(-,x).
LesReport verify_les(ExtCache& cache, const ShortExactSeq& e, const LambdaModule& x);

/// True when im(first) = ker(second) for linear maps given as matrices.
bool exact_at(const Matrix& first, const Matrix& second);

}  // namespace exactkit
