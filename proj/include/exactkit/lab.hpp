#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "exactkit/diagram.hpp"
#include "exactkit/subfunctor.hpp"

namespace exactkit {

/// Search budgets for the bounded checks. Every field is reported with the results.
struct LabOptions {
    unsigned window_dim = 3;         ///< objects of dim <= this enter morphism tables
    unsigned closed_window_dim = 3;  ///< end objects of the sequences tested for closedness
    std::uint64_t seed = 0;
    unsigned trials = 200;              ///< isomorphism sandwiches for (B), closure samples
    unsigned exhaustive_cap = 4096;     ///< Hom(X, Y) is enumerated when it has <= this many elements
    unsigned sample_per_pair = 64;      ///< otherwise this many seeded samples plus zero
    unsigned long long pair_budget = 400000;  ///< composable pairs per axiom
    unsigned grid_budget = 1280;        ///< grids per subfunctor in the 3x3 search
    unsigned class_cap = 256;           ///< classes per end pair in closedness checks
    unsigned chain_dim = 4;             ///< ambient objects of submodule chains for (E), (E*) and snake grids
    unsigned long long subspace_cap = 20000;  ///< objects with more subspaces are skipped
};

/// Defaults scaled to the configuration: windows grow with N but stay within max_dim.
LabOptions default_lab_options(const Skeleton& sk, std::uint64_t seed, unsigned trials);

struct Witness {
    std::string what;
    std::vector<ModuleMorphism> maps;
};

/// Membership in M_F for every morphism of a window table.
class MorphismTable {
public:
    struct Block {
        std::size_t src = 0, tgt = 0;
        bool exhaustive = false;
        std::vector<ModuleMorphism> maps;
        std::vector<char> member;
    };

    /// Membership is evaluated by the OpenMP kernel when `parallel`, else serially.
    MorphismTable(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt, bool parallel);

    const std::vector<LambdaModule>& objects() const { return objects_; }
    const Block& block(std::size_t s, std::size_t t) const { return blocks_[s * objects_.size() + t]; }
    std::size_t size() const;
    /// Table lookup when possible, otherwise computed and memoized.
    bool member(const ModuleMorphism& f);

    friend bool operator==(const MorphismTable& x, const MorphismTable& y) { return x.blocks_flags() == y.blocks_flags(); }
    std::vector<char> blocks_flags() const;

private:
    const Skeleton& sk_;
    const SubfunctorData& F_;
    std::vector<LambdaModule> objects_;
    std::vector<Block> blocks_;
    std::unordered_map<std::string, bool> memo_;
};

std::string morphism_key(const ModuleMorphism& f);

/// Membership flags for a list of morphisms, parallel kernel and serial reference.
std::vector<char> membership_parallel(const Skeleton& sk, const SubfunctorData& F,
                                      const std::vector<ModuleMorphism>& maps);
std::vector<char> membership_serial(const Skeleton& sk, const SubfunctorData& F,
                                    const std::vector<ModuleMorphism>& maps);

/// Composable mono pairs A -> B -> C from chains 0 != A < B < C of submodules of a
/// canonical C, and the epi pairs C -> C/A -> C/B. Up to isomorphism these are all
/// composable pairs of proper monos (resp. epis) with dim C bounded.
struct ChainSet {
    std::vector<std::pair<ModuleMorphism, ModuleMorphism>> monos, epis;
    bool truncated = false;  ///< some ambient object had too many subspaces
};
ChainSet submodule_chains(const CategoryConfig& cfg, unsigned max_dim, unsigned long long subspace_cap);

struct AxiomResult {
    std::string name;
    bool pass = true;
    unsigned long long checked = 0;
    bool truncated = false;  ///< the pair budget stopped the sweep
    std::optional<Witness> witness;
};

struct MorphismClassVerdict {
    std::vector<AxiomResult> axioms;  ///< A, B, C, D, D*, E, E*
    const AxiomResult& get(const std::string& name) const;
    bool f_class() const;
    bool hf_class() const;
};

/// (A)-(D*) over the table; (E), (E*) over the chains.
MorphismClassVerdict check_fclass(const Skeleton& sk, const SubfunctorData& F, MorphismTable& table,
                                  const ChainSet& chains, const LabOptions& opt);

struct ClosedReport {
    bool right = true;
    bool left = true;
    unsigned long long sequences = 0;
    std::optional<Witness> right_witness, left_witness;
};
ClosedReport is_closed(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt);

struct ThreeByThreeReport {
    unsigned long long grids = 0;       ///< grids examined (each in both orientations)
    unsigned long long applicable = 0;  ///< orientations whose premises held
    unsigned long long violations = 0;
    std::optional<Witness> witness;
    bool pass() const { return violations == 0; }
};
/// Grid premises: first and third rows and all columns F-exact. Conclusion: middle row.
bool grid_premises(const Skeleton& sk, const SubfunctorData& F, const Grid3x3& g);
ThreeByThreeReport check_3x3(const Skeleton& sk, const SubfunctorData& F, MorphismTable& table,
                             const ChainSet& chains, const LabOptions& opt);

/// Test grids for the 3x3 search: snake grids over F-mono / F-epi chain pairs, quotient
/// grids of random submodule pairs, and split completions. Every grid is returned in an
/// orientation whose premises hold. Deterministic in the seed.
std::vector<Grid3x3> generate_grids(const Skeleton& sk, const SubfunctorData& F, MorphismTable& table,
                                    const ChainSet& chains, std::uint64_t seed, unsigned count);

struct MainTheoremReport {
    bool closed = false;
    bool hf = false;
    bool three_by_three = false;
    bool agree() const { return closed == hf && hf == three_by_three; }
};

enum class Tri { yes, no, indeterminate };
const char* tri_name(Tri t);

struct EnoughReport {
    Tri verdict = Tri::indeterminate;
    std::vector<ShortExactSeq> witnesses;  ///< one per indecomposable when verdict is yes
    std::string note;
    bool characterization_ok = true;  ///< F-exact <=> Hom(P,-)-exact on window classes (yes only)
};
EnoughReport has_enough_projectives(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt);
EnoughReport has_enough_injectives(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt);

/// Hom(M_k, -) (resp. Hom(-, M_k)) exact on every F-exact window sequence, by dimension count.
std::vector<unsigned> projectives_by_hom(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt);
std::vector<unsigned> injectives_by_hom(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt);

/// Span of the classes of skeleton sequences whose two maps are both F-morphisms.
SubfunctorData rebuild_from_morphisms(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt);

struct ClosureAgreement {
    bool baer_closed = true;
    bool sum_closed = true;
    bool summand_closed = true;
    bool split_exact = true;
};
ClosureAgreement closure_agreement(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt);

/// Every verdict for one subfunctor.
struct SubfunctorReport {
    unsigned long long candidate_index = 0;
    SubfunctorData F;
    bool valid = false;
    ClosedReport closed;
    MorphismClassVerdict fclass;
    ThreeByThreeReport grid;
    std::vector<unsigned> proj, inj;
    bool proj_agree = false, inj_agree = false;
    EnoughReport enough_proj, enough_inj;
    bool rebuild_ok = false;
    ClosureAgreement closure;
    MainTheoremReport theorem() const;
    /// All checks that theory says must hold.
    bool consistent() const;
};

SubfunctorReport analyze_subfunctor(const Skeleton& sk, const SubfunctorData& F, const ChainSet& chains,
                                    const LabOptions& opt, bool parallel_kernels);

/// Reports for every enumerated subfunctor, computed in parallel over subfunctors and
/// returned in candidate order.
std::vector<SubfunctorReport> analyze_all(const Skeleton& sk, const std::vector<EnumeratedSubfunctor>& fs,
                                          const LabOptions& opt, bool parallel);

}  // namespace exactkit
