#include <doctest.h>

#include "exactkit/diagram.hpp"
#include "exactkit/error.hpp"
#include "exactkit/ext.hpp"
#include "exactkit/linalg.hpp"
#include "exactkit/rng.hpp"

using namespace exactkit;

namespace {

/// A pair of composable monos built from a random submodule chain.
std::pair<ModuleMorphism, ModuleMorphism> random_monos(Rng& rng, const LambdaModule& c) {
    Subspace b = random_submodule(rng, c, 1 + unsigned(rng.below(2)));
    auto kb = submodule(c, b);
    Subspace a = random_submodule(rng, kb.object, 1);
    auto ka = submodule(kb.object, a);
    return {ka.map, kb.map};
}

SesMorphism random_ses_morphism(Rng& rng, const CategoryConfig& cfg) {
    auto c = random_module(rng, cfg, 3), a = random_module(rng, cfg, 3);
    ExtBasis eb(c, a);
    auto e = eb.realize(random_vec(rng, cfg.p, eb.dim()));
    auto pb = pullback_ses(e, random_morphism(rng, random_module(rng, cfg, 3), c));
    auto po = pushout_ses(e, random_morphism(rng, a, random_module(rng, cfg, 3)));
    return compose(po.mor, pb.mor);
}

}  // namespace

TEST_CASE("zero grid") {
    CategoryConfig cfg{2, 2};
    auto z = zero_module(cfg);
    auto s = split_ses(z, z);
    auto g = split_grid(s, s);
    CHECK(verify_grid(g).ok());
}

TEST_CASE("split grid passes and a perturbed map is caught") {
    CategoryConfig cfg{2, 3};
    auto m1 = indecomposable(cfg, 1), m2 = indecomposable(cfg, 2);
    auto g = split_grid(split_ses(m1, m2), split_ses(m2, m1));
    auto r = verify_grid(g);
    CHECK(r.ok());
    CHECK(r.commutes);
    Grid3x3 bad = g;
    bad.j = zero_morphism(g.j.src(), g.j.tgt());
    auto rb = verify_grid(bad);
    CHECK_FALSE(rb.commutes);
    CHECK(rb.failed_square == "ja=di");
    CHECK(rb.rows_exact[1]);
    CHECK_FALSE(rb.cols_exact[1]);
    Grid3x3 wrong = g;
    wrong.a = identity_morphism(g.B());
    if (!(g.A() == g.B())) CHECK_THROWS_AS(verify_grid(wrong), InputError);
}

TEST_CASE("snake grid of the socle inclusion") {
    CategoryConfig cfg{2, 2};
    auto m1 = indecomposable(cfg, 1), m2 = indecomposable(cfg, 2);
    ModuleMorphism soc(m1, m2, Matrix::from_rows(2, {{0}, {1}}));
    auto g = snake_grid(soc, identity_morphism(m2));
    CHECK(verify_grid(g).ok());
    auto third = g.row(2);
    CHECK(third.a().dim() == 1);
    CHECK(third.b().dim() == 1);
    CHECK(third.c().dim() == 0);
    CHECK(is_iso(third.i()));
    auto id = snake_grid(identity_morphism(m2), identity_morphism(m2));
    CHECK(verify_grid(id).ok());
    CHECK_THROWS_AS(snake_grid(ModuleMorphism(m2, m1, Matrix::from_rows(2, {{1, 0}})), identity_morphism(m1)),
                    InputError);
}

TEST_CASE("transpose swaps rows and columns") {
    CategoryConfig cfg{2, 3};
    auto m1 = indecomposable(cfg, 1), m2 = indecomposable(cfg, 2);
    auto g = split_grid(split_ses(m1, m2), split_ses(m1, m1));
    auto t = transpose(g);
    CHECK(t.row(0) == g.col(0));
    CHECK(t.col(2) == g.row(2));
    CHECK(transpose(t).a == g.a);
}

TEST_CASE("property: snake grids, epi snake grids and quotient grids are exact") {
    Rng rng(51);
    for (int t = 0; t < 120; ++t) {
        CategoryConfig cfg{t % 3 ? 2u : 3u, 1 + unsigned(rng.below(3))};
        auto c = random_module(rng, cfg, 4);
        if (c.dim() == 0) continue;
        auto [f, g] = random_monos(rng, c);
        CHECK(verify_grid(snake_grid(f, g)).ok());
        // C -> C/A -> C/B through the factorization of the larger quotient.
        auto q = cokernel(compose(g, f)).map;
        auto q2 = cokernel(g).map;
        auto factor = solve(q.mat().transpose(), q2.mat().transpose());
        REQUIRE(factor);
        ModuleMorphism between(q.tgt(), q2.tgt(), factor->transpose());
        CHECK(verify_grid(epi_snake_grid(q, between)).ok());
        Subspace b = random_submodule(rng, c, 1), d = random_submodule(rng, c, 1);
        CHECK(verify_grid(submodule_grid(c, b, d)).ok());
    }
}

TEST_CASE("snake lemma on sequence morphisms") {
    CategoryConfig cfg{2, 2};
    auto m1 = indecomposable(cfg, 1);
    ExtBasis eb(m1, m1);
    auto e = eb.realize(Vec{1});
    auto rid = snake_connecting(identity_ses_morphism(e));
    CHECK(rid.ok());
    CHECK(rid.delta.src().dim() == 0);

    auto po = pushout_ses(e, ModuleMorphism(m1, indecomposable(cfg, 2), Matrix::from_rows(2, {{0}, {1}})));
    auto r = snake_connecting(po.mor);
    CHECK(r.ok());
    REQUIRE(r.t);
    CHECK(is_iso(*r.t));
    CHECK(r.lemma_identities);
}

TEST_CASE("property: six-term exactness") {
    Rng rng(52);
    for (int t = 0; t < 100; ++t) {
        CategoryConfig cfg{t % 4 ? 2u : 3u, 1 + unsigned(rng.below(3))};
        auto mor = random_ses_morphism(rng, cfg);
        auto r = snake_connecting(mor);
        CHECK(r.positions.size() == 6);
        CHECK(r.choice_independent);
        CHECK(r.ok());
    }
}

TEST_CASE("submodules") {
    CategoryConfig cfg{2, 3};
    auto m3 = indecomposable(cfg, 3);
    CHECK(is_submodule(m3, Subspace::span(2, 3, {{0, 0, 1}})));
    CHECK_FALSE(is_submodule(m3, Subspace::span(2, 3, {{1, 0, 0}})));
    CHECK_THROWS_AS(submodule(m3, Subspace::span(2, 3, {{1, 0, 0}})), InputError);
    auto k = submodule(m3, Subspace::span(2, 3, {{0, 1, 0}, {0, 0, 1}}));
    CHECK(jordan_type(k.object) == std::vector<unsigned>{2});
}
