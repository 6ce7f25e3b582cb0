#include <doctest.h>

#include <omp.h>

#include "exactkit/error.hpp"
#include "exactkit/json_io.hpp"
#include "exactkit/lab.hpp"
#include "exactkit/linalg.hpp"
#include "exactkit/report.hpp"
#include "exactkit/rng.hpp"

using namespace exactkit;

TEST_CASE("rng reference values") {
    CHECK(Rng::splitmix64(0) == 0xE220A8397B1DCDAFULL);
    // Computed with an independent Python transcription of splitmix64 + xorshift64*.
    Rng r(42);
    CHECK(r.next() == 0x31B0ECE7C4F697A2ULL);
    CHECK(r.next() == 0x9008A3B1CB686F03ULL);
    CHECK(r.next() == 0x7C7173ABD97BE16FULL);
    Rng a(7), b(7);
    for (int k = 0; k < 100; ++k) CHECK(a.below(13) == b.below(13));
    CHECK(Rng::derive(1, 2) != Rng::derive(1, 3));
    CHECK(Rng::derive(1, 2) != Rng::derive(2, 2));
}

TEST_CASE("canonical JSON") {
    Json j = {{"zeta", 1}, {"alpha", {{"b", 2}, {"a", 1}}}};
    CHECK(canonical(j) == R"({"alpha":{"a":1,"b":2},"zeta":1})");
}

TEST_CASE("matrix and module round trips") {
    Rng rng(81);
    for (int t = 0; t < 30; ++t) {
        CategoryConfig cfg{t % 2 ? 3u : 2u, 1 + unsigned(rng.below(3))};
        auto a = random_module(rng, cfg, 3), b = random_module(rng, cfg, 3);
        CHECK(module_from_json(to_json(a)) == a);
        auto f = random_morphism(rng, a, b);
        CHECK(morphism_from_json(to_json(f)) == f);
        CHECK(matrix_from_json(to_json(f.mat())) == f.mat());
        ExtBasis eb(a, b);
        auto e = eb.realize(random_vec(rng, cfg.p, eb.dim()));
        CHECK(ses_from_json(Json::parse(canonical(to_json(e)))) == e);
    }
    auto m = Matrix::from_rows(3, {{1, 2}});
    CHECK(canonical(to_json(m)) == R"({"cols":2,"data":[[1,2]],"p":3,"rows":1})");
}

TEST_CASE("malformed JSON is rejected") {
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"p":2,"rows":1,"cols":2,"data":[[1]]})")), InputError);
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"p":2,"rows":1,"cols":1,"data":[[2]]})")), InputError);
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"rows":1})")), InputError);
    CHECK_THROWS_AS(module_from_json(Json::parse(R"({"p":2,"N":1,"dim":2,"action":[[0,0],[1,0]]})")),
                    ValidationError);
}

TEST_CASE("subfunctor round trip") {
    auto sk = build_skeleton({2, 3}, 4);
    for (const auto& e : enumerate_subfunctors(*sk)) {
        Json j = to_json(*sk, e.F);
        CHECK(subfunctor_from_json(*sk, j) == e.F);
        CHECK(j["pairs"]["1,1"]["ext_dim"] == 1);
    }
}

TEST_CASE("config validation") {
    RunConfig rc;
    rc.command = "ext-table";
    rc.p = 4;
    CHECK_THROWS_AS(run_command(rc), InputError);
    rc.p = 2;
    rc.N = 3;
    rc.D = 2;
    CHECK_THROWS_AS(run_command(rc), InputError);
    rc.D = 4;
    rc.command = "subcategory";
    CHECK_THROWS_AS(run_command(rc), InputError);
    rc.generators = {4};
    CHECK_THROWS_AS(run_command(rc), InputError);
    rc.command = "nope";
    rc.generators.clear();
    CHECK_THROWS_AS(run_command(rc), InputError);
}

TEST_CASE("ext-table report") {
    RunConfig rc;
    rc.command = "ext-table";
    rc.N = 2;
    rc.D = 3;
    auto r = run_command(rc);
    CHECK(r.exit_code == 0);
    CHECK(r.json["schema"] == kSchemaExtTable);
    CHECK(r.json["config"]["D"] == 3);
    CHECK(r.json["config"]["trials"] == 200);
    CHECK(r.json["table"][0]["dim"] == 1);
    std::string tsv = r.render("tsv");
    CHECK(tsv.find("i\tj\tdim_ext\n1\t1\t1\n1\t2\t0\n2\t1\t0\n2\t2\t0\n") != std::string::npos);
    CHECK(tsv.find('\r') == std::string::npos);
    std::string js = r.render("json");
    CHECK(js.back() == '\n');
    CHECK(js.find(' ') == std::string::npos);
    CHECK(Json::parse(js) == r.json);
}

TEST_CASE("verify-core report and its negative control") {
    RunConfig rc;
    rc.command = "verify-core";
    rc.N = 2;
    rc.D = 3;
    rc.trials = 200;
    rc.seed = 5;
    auto ok = run_command(rc);
    CHECK(ok.exit_code == 0);
    CHECK(ok.json["ok"] == true);
    rc.inject_fault = true;
    auto bad = run_command(rc);
    CHECK(bad.exit_code == 1);
    bool witnessed = false;
    for (const auto& c : bad.json["checks"])
        if (c["failures"].get<int>() > 0) witnessed = witnessed || !c["witness"].is_null();
    CHECK(witnessed);
    rc.inject_fault = false;
    rc.trials = 0;
    auto none = run_command(rc);
    CHECK(none.exit_code == 0);
    CHECK(none.json["warning"] != "");
}

TEST_CASE("enumerate and subcategory reports") {
    RunConfig rc;
    rc.command = "enumerate";
    rc.N = 2;
    rc.D = 3;
    rc.seed = 42;
    auto r = run_command(rc, false);
    CHECK(r.exit_code == 0);
    CHECK(r.json["count"] == 2);
    CHECK(r.json["subfunctors"].size() == 2);
    omp_set_num_threads(2);
    CHECK(run_command(rc, true).render("json") == r.render("json"));
    CHECK(run_command(rc, true).render("tsv") == r.render("tsv"));

    rc.command = "subcategory";
    rc.generators = {1};
    auto s = run_command(rc);
    CHECK(s.exit_code == 0);
    CHECK(s.json["subfunctor"]["U"]["pairs"]["1,1"]["dim"] == 0);

    rc.command = "enumerate";
    rc.N = 6;
    rc.D = 6;
    CHECK_THROWS_AS(run_command(rc), BudgetError);
}
