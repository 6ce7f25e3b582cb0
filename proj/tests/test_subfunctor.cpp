#include <doctest.h>

#include "exactkit/error.hpp"
#include "exactkit/linalg.hpp"
#include "exactkit/rng.hpp"
#include "exactkit/subfunctor.hpp"

using namespace exactkit;

namespace {

ShortExactSeq generator(const Skeleton& sk, unsigned i, unsigned j) {
    return sk.ext(i, j).realize(unit_vec(sk.ext_dim(i, j), 0));
}

/// Decomposition oracle: move e onto canonical ends, cut out every component by a
/// pullback along an inclusion and a pushout along a projection, test each against
/// U, and confirm that the Baer sum of the re-embedded components gives back e.
struct OracleVerdict {
    bool f_exact = true;
    bool reconstructs = true;
};

OracleVerdict oracle_f_exact(const Skeleton& sk, const SubfunctorData& F, const ShortExactSeq& e) {
    const auto& cfg = sk.config();
    auto pc = jordan_type(e.c()), pa = jordan_type(e.a());
    auto toc = canonical_iso(e.c()), toa = canonical_iso(e.a());
    ShortExactSeq t = pushout_ses(pullback_ses(e, inverse(toc)).seq, toa).seq;
    std::vector<LambdaModule> cs, as;
    for (unsigned k : pc) cs.push_back(indecomposable(cfg, k));
    for (unsigned k : pa) as.push_back(indecomposable(cfg, k));
    auto dc = direct_sum(cfg, cs), da = direct_sum(cfg, as);
    REQUIRE(dc.sum == t.c());
    REQUIRE(da.sum == t.a());
    OracleVerdict v;
    ShortExactSeq total = split_ses(t.c(), t.a());
    for (std::size_t s = 0; s < pc.size(); ++s)
        for (std::size_t u = 0; u < pa.size(); ++u) {
            auto comp = pushout_ses(pullback_ses(t, dc.inclusions[s]).seq, da.projections[u]).seq;
            Vec x = sk.ext(pc[s], pa[u]).classify(comp);
            if (!F.at(pc[s], pa[u]).contains(x)) v.f_exact = false;
            auto back = pushout_ses(pullback_ses(comp, dc.projections[s]).seq, da.inclusions[u]).seq;
            total = baer_sum(total, back);
        }
    v.reconstructs = yoneda_equivalent(total, t).has_value();
    return v;
}

std::vector<SubfunctorData> all_valid(const Skeleton& sk) {
    std::vector<SubfunctorData> out;
    for (const auto& f : enumerate_subfunctors(sk, false)) out.push_back(f.F);
    return out;
}

}  // namespace

TEST_CASE("skeleton tables") {
    auto s1 = build_skeleton({2, 1}, 2);
    CHECK(s1->ext_dim(1, 1) == 0);
    auto s2 = build_skeleton({2, 2}, 3);
    CHECK(s2->ext_dim(1, 1) == 1);
    CHECK(s2->ext_dim(1, 2) + s2->ext_dim(2, 1) + s2->ext_dim(2, 2) == 0);
    auto s3 = build_skeleton({2, 3}, 4);
    for (unsigned i = 1; i <= 3; ++i)
        for (unsigned j = 1; j <= 3; ++j) CHECK(s3->ext_dim(i, j) == (i < 3 && j < 3 ? 1u : 0u));
    CHECK(s3->M(2) == indecomposable({2, 3}, 2));
    CHECK_THROWS_AS(build_skeleton({2, 3}, 2), InputError);
}

TEST_CASE("validation of U tuples") {
    auto sk = build_skeleton({2, 3}, 4);
    CHECK(validate_subfunctor(*sk, zero_subfunctor(*sk)).valid);
    CHECK(validate_subfunctor(*sk, full_subfunctor(*sk)).valid);
    // Keep the class in Ext(M_1, M_2), drop its images in Ext(M_1, M_1) and Ext(M_2, M_2).
    SubfunctorData broken = zero_subfunctor(*sk);
    broken.at(1, 2) = Subspace::full(2, 1);
    auto v = validate_subfunctor(*sk, broken);
    CHECK_FALSE(v.valid);
    CHECK_FALSE(v.witness.empty());
}

TEST_CASE("closure of seed classes") {
    auto sk = build_skeleton({2, 3}, 4);
    CHECK(generate_subfunctor(*sk, {}) == zero_subfunctor(*sk));
    std::vector<SeedClass> all;
    for (unsigned i = 1; i <= 3; ++i)
        for (unsigned j = 1; j <= 3; ++j)
            for (std::size_t k = 0; k < sk->ext_dim(i, j); ++k) all.push_back({i, j, unit_vec(sk->ext_dim(i, j), k)});
    CHECK(generate_subfunctor(*sk, all) == full_subfunctor(*sk));
    auto g = generate_subfunctor(*sk, {{1, 1, Vec{1}}});
    CHECK(validate_subfunctor(*sk, g).valid);
    CHECK(g.at(1, 1).contains(Vec{1}));
    for (unsigned k = 1; k <= 3; ++k) {
        const auto& maps = sk->covariant(1, 1, k);
        for (const auto& m : maps) CHECK(g.at(1, k).contains(m.apply(Vec{1})));
        for (const auto& m : sk->contravariant(1, 1, k)) CHECK(g.at(k, 1).contains(m.apply(Vec{1})));
    }
    CHECK_THROWS_AS(generate_subfunctor(*sk, {{1, 3, Vec{1}}}), InputError);
}

TEST_CASE("F-exactness examples") {
    auto sk = build_skeleton({2, 2}, 3);
    auto gen = generator(*sk, 1, 1);
    CHECK_FALSE(is_F_exact(*sk, zero_subfunctor(*sk), gen));
    CHECK(is_F_exact(*sk, full_subfunctor(*sk), gen));
    auto other = build_skeleton({2, 3}, 4);
    CHECK_THROWS_AS(is_F_exact(*other, zero_subfunctor(*other), gen), InputError);
}

TEST_CASE("split sequences are F-exact for every valid F") {
    for (unsigned N = 1; N <= 3; ++N) {
        auto sk = build_skeleton({2, N}, N + 1);
        auto objs = window_objects(sk->config(), 3);
        for (const auto& F : all_valid(*sk))
            for (const auto& c : objs)
                for (const auto& a : objs) CHECK(is_F_exact(*sk, F, split_ses(c, a)));
    }
}

TEST_CASE("F-morphism examples") {
    auto sk = build_skeleton({2, 2}, 3);
    auto m1 = sk->M(1), m2 = sk->M(2);
    ModuleMorphism soc(m1, m2, Matrix::from_rows(2, {{0}, {1}}));
    for (const auto& F : {zero_subfunctor(*sk), full_subfunctor(*sk)}) {
        CHECK(is_F_morphism(*sk, F, identity_morphism(m2)));
        CHECK(is_F_morphism(*sk, F, zero_morphism(m2, m1)));
    }
    CHECK_FALSE(is_F_morphism(*sk, zero_subfunctor(*sk), soc));
    CHECK(is_F_morphism(*sk, full_subfunctor(*sk), soc));
}

TEST_CASE("enumeration counts") {
    CHECK(enumerate_subfunctors(*build_skeleton({2, 1}, 2)).size() == 1);
    auto s2 = build_skeleton({2, 2}, 3);
    auto f2 = enumerate_subfunctors(*s2);
    REQUIRE(f2.size() == 2);
    CHECK(f2[0].F == zero_subfunctor(*s2));
    CHECK(f2[1].F == full_subfunctor(*s2));
    auto s3 = build_skeleton({2, 3}, 4);
    CHECK(candidate_count(*s3) == 16);
    auto f3 = enumerate_subfunctors(*s3);
    CHECK(f3.size() == 7);
    CHECK(f3.front().F == zero_subfunctor(*s3));
    CHECK(f3.back().F == full_subfunctor(*s3));
    CHECK_THROWS_AS(enumerate_subfunctors(*build_skeleton({2, 6}, 6)), BudgetError);
}

TEST_CASE("candidate validation: parallel kernel equals the serial reference") {
    for (unsigned N = 1; N <= 3; ++N) {
        auto sk = build_skeleton({2, N}, N + 1);
        CandidateSpace space(*sk);
        CHECK(validate_candidates_parallel(*sk, space) == validate_candidates_serial(*sk, space));
    }
    auto sk = build_skeleton({3, 3}, 3);
    CandidateSpace space(*sk);
    CHECK(validate_candidates_parallel(*sk, space) == validate_candidates_serial(*sk, space));
}

TEST_CASE("subfunctors from subcategories") {
    auto s2 = build_skeleton({2, 2}, 3);
    CHECK(subfunctor_from_subcategory(*s2, {s2->M(2)}, Variant::covariant) == full_subfunctor(*s2));
    CHECK(subfunctor_from_subcategory(*s2, {s2->M(2)}, Variant::contravariant) == full_subfunctor(*s2));
    CHECK(subfunctor_from_subcategory(*s2, {s2->M(1)}, Variant::covariant) == zero_subfunctor(*s2));
    auto s3 = build_skeleton({2, 3}, 4);
    for (unsigned mask = 1; mask < 8; ++mask) {
        std::vector<LambdaModule> gens;
        for (unsigned k = 1; k <= 3; ++k)
            if (mask & (1u << (k - 1))) gens.push_back(s3->M(k));
        for (auto v : {Variant::covariant, Variant::contravariant})
            CHECK(validate_subfunctor(*s3, subfunctor_from_subcategory(*s3, gens, v)).valid);
    }
}

TEST_CASE("relative projectives and injectives") {
    for (unsigned N = 1; N <= 3; ++N) {
        auto sk = build_skeleton({2, N}, N + 1);
        std::vector<unsigned> all;
        for (unsigned k = 1; k <= N; ++k) all.push_back(k);
        CHECK(relative_projectives(*sk, zero_subfunctor(*sk)) == all);
        CHECK(relative_injectives(*sk, zero_subfunctor(*sk)) == all);
        CHECK(relative_projectives(*sk, full_subfunctor(*sk)) == (N == 1 ? all : std::vector<unsigned>{N}));
        CHECK(relative_injectives(*sk, full_subfunctor(*sk)) == (N == 1 ? all : std::vector<unsigned>{N}));
    }
}

TEST_CASE("window objects") {
    auto objs = window_objects({2, 2}, 3);
    REQUIRE(!objs.empty());
    CHECK(objs.front().dim() == 0);
    // partitions of 0..3 with parts <= 2: 1 + 1 + 2 + 2
    CHECK(objs.size() == 6);
    for (std::size_t k = 1; k < objs.size(); ++k) CHECK(objs[k - 1].dim() <= objs[k].dim());
}

TEST_CASE("property: component decomposition is sound") {
    Rng rng(61);
    for (unsigned N = 2; N <= 3; ++N) {
        auto sk = build_skeleton({2, N}, 4);
        auto fs = all_valid(*sk);
        for (int t = 0; t < 40; ++t) {
            auto c = random_module(rng, sk->config(), 3), a = random_module(rng, sk->config(), 3);
            auto eb = sk->cache().get(c, a);
            auto e = eb->realize(random_vec(rng, 2, eb->dim()));
            for (const auto& F : fs) {
                auto o = oracle_f_exact(*sk, F, e);
                CHECK(o.reconstructs);
                CHECK(o.f_exact == is_F_exact(*sk, F, e));
            }
        }
    }
}

TEST_CASE("property: direct summands and sums of F-exact sequences") {
    Rng rng(62);
    auto sk = build_skeleton({2, 3}, 4);
    auto fs = all_valid(*sk);
    for (int t = 0; t < 30; ++t) {
        auto c1 = random_module(rng, sk->config(), 2), a1 = random_module(rng, sk->config(), 2);
        auto c2 = random_module(rng, sk->config(), 2), a2 = random_module(rng, sk->config(), 2);
        auto b1 = sk->cache().get(c1, a1), b2 = sk->cache().get(c2, a2);
        auto e1 = b1->realize(random_vec(rng, 2, b1->dim()));
        auto e2 = b2->realize(random_vec(rng, 2, b2->dim()));
        auto s = direct_sum_ses(e1, e2);
        for (const auto& F : fs) {
            bool x1 = is_F_exact(*sk, F, e1), x2 = is_F_exact(*sk, F, e2);
            CHECK(is_F_exact(*sk, F, s) == (x1 && x2));
        }
    }
}
