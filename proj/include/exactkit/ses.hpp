#pragma once

#include <optional>
#include <string>

#include "exactkit/module.hpp"

namespace exactkit {

/// 0 -> a --i--> b --p--> c -> 0, validated on construction.
class ShortExactSeq {
public:
    ShortExactSeq() = default;

    const LambdaModule& a() const { return i_.src(); }
    const LambdaModule& b() const { return i_.tgt(); }
    const LambdaModule& c() const { return p_.tgt(); }
    const ModuleMorphism& i() const { return i_; }
    const ModuleMorphism& p() const { return p_; }
    const CategoryConfig& config() const { return i_.src().config(); }

    friend bool operator==(const ShortExactSeq&, const ShortExactSeq&) = default;

private:
    friend ShortExactSeq make_ses(const ModuleMorphism& i, const ModuleMorphism& p);
    ModuleMorphism i_;
    ModuleMorphism p_;
};

/// Throws ValidationError naming the failed condition ("i not mono", "p not epi",
/// "p.i != 0", "im i != ker p") or InputError when i and p are not composable.
ShortExactSeq make_ses(const ModuleMorphism& i, const ModuleMorphism& p);
/// Same, with the objects spelled out; they must match the maps literally.
ShortExactSeq make_ses(const LambdaModule& a, const ModuleMorphism& i, const LambdaModule& b,
                       const ModuleMorphism& p, const LambdaModule& c);

/// Split sequence 0 -> a -> a (+) c -> c -> 0 with the canonical inclusion and projection.
ShortExactSeq split_ses(const LambdaModule& c, const LambdaModule& a);

/// (f, g, h): src -> tgt with commuting squares.
struct SesMorphism {
    ShortExactSeq src;
    ShortExactSeq tgt;
    ModuleMorphism f, g, h;
};

SesMorphism make_ses_morphism(const ShortExactSeq& src, const ShortExactSeq& tgt, const ModuleMorphism& f,
                              const ModuleMorphism& g, const ModuleMorphism& h);
SesMorphism identity_ses_morphism(const ShortExactSeq& e);
SesMorphism compose(const SesMorphism& second, const SesMorphism& first);

/// Middle map g with (1_A, g, 1_C): e1 -> e2, if any. Ends must be literally equal.
std::optional<ModuleMorphism> yoneda_equivalent(const ShortExactSeq& e1, const ShortExactSeq& e2);

struct InducedSes {
    ShortExactSeq seq;
    SesMorphism mor;  ///< e -> seq for pushouts, seq -> e for pullbacks
};

/// f.e: middle is the cokernel of (i, -f): A -> B (+) A'. mor = (f, l, 1_C).
InducedSes pushout_ses(const ShortExactSeq& e, const ModuleMorphism& f);
/// e.g: middle is the kernel of (p, -g): B (+) C' -> C. mor = (1_A, w, g).
InducedSes pullback_ses(const ShortExactSeq& e, const ModuleMorphism& g);

ShortExactSeq direct_sum_ses(const ShortExactSeq& e1, const ShortExactSeq& e2);

/// Nabla.(e1 (+) e2).Delta, pulling back first.
ShortExactSeq baer_sum(const ShortExactSeq& e1, const ShortExactSeq& e2);
/// Same class, pushing out first.
ShortExactSeq baer_sum_pushout_first(const ShortExactSeq& e1, const ShortExactSeq& e2);
/// Representative of -[e]: pushout along -1_A.
ShortExactSeq negate_ses(const ShortExactSeq& e);

struct SesFactorization {
    ShortExactSeq middle;  ///< pushout of the source along f, in E(C, A')
    SesMorphism first;     ///< (f, g_bar, 1_C): src -> middle
    SesMorphism second;    ///< (1_A', g', h): middle -> tgt
};
SesFactorization factor_ses_morphism(const SesMorphism& mor);

std::string describe(const ShortExactSeq& e);

}  // namespace exactkit
