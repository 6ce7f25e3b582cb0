#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "exactkit/ext.hpp"

namespace exactkit {

/// Ext(C, A) for canonical sums C, A, with the projections onto the indecomposable
/// components Ext(M_{c_s}, M_{a_t}).
struct ComponentMap {
    LambdaModule c, a;
    std::vector<unsigned> c_parts, a_parts;
    std::shared_ptr<const ExtBasis> basis;
    struct Block {
        unsigned ci, aj;  ///< 1-based indecomposable indices
        Matrix proj;      ///< Ext(c, a) -> Ext(M_ci, M_aj)
    };
    std::vector<Block> blocks;
};

/// Finite window onto the category: M_1..M_N with Hom/Ext tables and action matrices.
/// Indices are 1-based in the public accessors, matching M_i.
class Skeleton {
public:
    Skeleton(const CategoryConfig& cfg, unsigned max_dim);

    const CategoryConfig& config() const { return cfg_; }
    unsigned N() const { return cfg_.N; }
    unsigned p() const { return cfg_.p; }
    unsigned max_dim() const { return max_dim_; }
    const LambdaModule& M(unsigned i) const { return m_.at(i - 1); }
    ExtCache& cache() const { return *cache_; }

    /// Ext(M_i, M_j): extensions with C = M_i and A = M_j.
    const ExtBasis& ext(unsigned i, unsigned j) const { return *ext_.at(idx(i, j)); }
    std::size_t ext_dim(unsigned i, unsigned j) const { return ext(i, j).dim(); }
    const std::vector<ModuleMorphism>& hom(unsigned i, unsigned j) const { return hom_.at(idx(i, j)); }

    /// Ext(M_i, f) for f in hom(j, k): Ext(M_i, M_j) -> Ext(M_i, M_k).
    const std::vector<Matrix>& covariant(unsigned i, unsigned j, unsigned k) const {
        return cov_.at(idx3(i, j, k));
    }
    /// Ext(g, M_j) for g in hom(k, i): Ext(M_i, M_j) -> Ext(M_k, M_j).
    const std::vector<Matrix>& contravariant(unsigned i, unsigned j, unsigned k) const {
        return contra_.at(idx3(i, j, k));
    }

    /// Component data for canonical sums of the given partitions; cached, thread-safe.
    std::shared_ptr<const ComponentMap> components(const std::vector<unsigned>& c_parts,
                                                   const std::vector<unsigned>& a_parts) const;

    std::size_t idx(unsigned i, unsigned j) const { return (i - 1) * cfg_.N + (j - 1); }

private:
    std::size_t idx3(unsigned i, unsigned j, unsigned k) const { return idx(i, j) * cfg_.N + (k - 1); }

    CategoryConfig cfg_;
    unsigned max_dim_;
    std::vector<LambdaModule> m_;
    std::shared_ptr<ExtCache> cache_;
    std::vector<std::shared_ptr<const ExtBasis>> ext_;
    std::vector<std::vector<ModuleMorphism>> hom_;
    std::vector<std::vector<Matrix>> cov_, contra_;

    struct ComponentCache {
        std::shared_mutex mu;
        std::map<std::string, std::shared_ptr<const ComponentMap>> table;
    };
    std::shared_ptr<ComponentCache> comp_;
};

/// Throws InputError unless max_dim >= N.
std::unique_ptr<Skeleton> build_skeleton(const CategoryConfig& cfg, unsigned max_dim);

/// A choice of subspaces U(i, j) of Ext(M_i, M_j) for all skeleton pairs.
struct SubfunctorData {
    unsigned N = 0;
    std::vector<Subspace> U;  ///< row-major over (i, j)

    const Subspace& at(unsigned i, unsigned j) const { return U.at((i - 1) * N + (j - 1)); }
    Subspace& at(unsigned i, unsigned j) { return U.at((i - 1) * N + (j - 1)); }
    friend bool operator==(const SubfunctorData&, const SubfunctorData&) = default;
};

SubfunctorData zero_subfunctor(const Skeleton& sk);
SubfunctorData full_subfunctor(const Skeleton& sk);

struct SubfunctorVerdict {
    bool valid = false;
    std::string witness;  ///< first failing closure condition
};

/// Closure of every U(i, j) under the pushout and pullback actions of hom-basis maps.
SubfunctorVerdict validate_subfunctor(const Skeleton& sk, const SubfunctorData& F);

struct SeedClass {
    unsigned i, j;
    Vec coords;
};
/// Smallest valid subfunctor containing the seeds.
SubfunctorData generate_subfunctor(const Skeleton& sk, const std::vector<SeedClass>& seeds);

/// Transport of e to canonical ends, classified in the canonical-sum basis.
struct CanonicalClass {
    std::shared_ptr<const ComponentMap> comp;
    Vec coords;
};
CanonicalClass canonical_class(const Skeleton& sk, const ShortExactSeq& e);

bool is_F_exact(const Skeleton& sk, const SubfunctorData& F, const ShortExactSeq& e);
/// F(c, a) as a subspace of Ext(c, a) in the coordinates of sk.cache().get(c, a),
/// or of `basis` when given.
Subspace f_subspace(const Skeleton& sk, const SubfunctorData& F, const ExtBasis& basis);
Subspace f_subspace(const Skeleton& sk, const SubfunctorData& F, const LambdaModule& c, const LambdaModule& a);

/// Both the coimage sequence Ker f -> A -> Im f and the image sequence
/// Im f -> B -> Coker f are F-exact.
bool is_F_morphism(const Skeleton& sk, const SubfunctorData& F, const ModuleMorphism& f);

/// Canonical sums of every partition with parts <= N and total dim <= max_dim,
/// zero first, then by dimension and partition (descending lexicographic).
std::vector<LambdaModule> window_objects(const CategoryConfig& cfg, unsigned max_dim);
std::vector<std::vector<unsigned>> window_partitions(unsigned N, unsigned max_dim);

enum class Variant { covariant, contravariant };
/// F_X (covariant): classes whose pullbacks along every map from a generator split.
/// F^X (contravariant): classes whose pushouts along every map into a generator split.
SubfunctorData subfunctor_from_subcategory(const Skeleton& sk, const std::vector<LambdaModule>& generators,
                                           Variant variant);

/// Indices k with U(k, j) = 0 for all j (resp. U(i, k) = 0 for all i).
std::vector<unsigned> relative_projectives(const Skeleton& sk, const SubfunctorData& F);
std::vector<unsigned> relative_injectives(const Skeleton& sk, const SubfunctorData& F);

/// Candidate space for enumeration: one list of subspaces per skeleton pair.
class CandidateSpace {
public:
    explicit CandidateSpace(const Skeleton& sk);
    /// Saturates just above the guard; size_text() has the full product.
    unsigned long long size() const { return total_; }
    std::string size_text() const;
    SubfunctorData candidate(unsigned long long index) const;

private:
    unsigned N_;
    std::vector<std::vector<Subspace>> options_;
    unsigned long long total_ = 1;
    long double exact_ = 1;
};

constexpr unsigned long long kEnumerationGuard = 1000000ULL;

/// Validity flag of every candidate, in candidate order. Serial reference.
std::vector<char> validate_candidates_serial(const Skeleton& sk, const CandidateSpace& space);
/// Same result, OpenMP-parallel over candidates.
std::vector<char> validate_candidates_parallel(const Skeleton& sk, const CandidateSpace& space);

struct EnumeratedSubfunctor {
    unsigned long long candidate_index;
    SubfunctorData F;
};
/// All valid subfunctors in candidate order; throws BudgetError past the guard.
std::vector<EnumeratedSubfunctor> enumerate_subfunctors(const Skeleton& sk, bool parallel = true);
unsigned long long candidate_count(const Skeleton& sk);

}  // namespace exactkit
