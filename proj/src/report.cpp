#include "exactkit/report.hpp"

#include <sstream>

#include "exactkit/core_suite.hpp"
#include "exactkit/error.hpp"
#include "exactkit/rng.hpp"

namespace exactkit {

void RunConfig::validate() const {
    category().validate();
    if (D < N) throw InputError("config: max-dim must be >= nilpotency (got D = " + std::to_string(D) + ", N = " +
                                std::to_string(N) + ")");
    if (format != "json" && format != "tsv") throw InputError("config: format must be json or tsv");
    if (variant != "cov" && variant != "contra") throw InputError("config: variant must be cov or contra");
    for (unsigned g : generators)
        if (g < 1 || g > N) throw InputError("config: generator index " + std::to_string(g) + " outside 1.." + std::to_string(N));
    if (command == "subcategory" && generators.empty()) throw InputError("subcategory: --generators is required");
}

Json to_json(const RunConfig& rc) {
    return {{"command", rc.command}, {"p", rc.p},           {"N", rc.N},
            {"D", rc.D},             {"trials", rc.trials}, {"seed", rc.seed},
            {"format", rc.format},   {"out", rc.out},       {"generators", rc.generators},
            {"variant", rc.variant}, {"inject_fault", rc.inject_fault}};
}

std::string Report::render(const std::string& format) const {
    if (format == "tsv") return tsv;
    return canonical(json) + "\n";
}

namespace {

struct Tsv {
    std::ostringstream s;
    void meta(const std::string& key, const std::string& value) { s << "# " << key << " " << value << "\n"; }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) s << (k ? "\t" : "") << cells[k];
        s << "\n";
    }
};

std::string b(bool x) { return x ? "true" : "false"; }

std::string list_text(const std::vector<unsigned>& v) {
    if (v.empty()) return "-";
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s;
}

std::string config_text(const RunConfig& rc) {
    std::string s = "p=" + std::to_string(rc.p) + " N=" + std::to_string(rc.N) + " D=" + std::to_string(rc.D) +
                    " trials=" + std::to_string(rc.trials) + " seed=" + std::to_string(rc.seed);
    if (!rc.generators.empty()) s += " generators=" + list_text(rc.generators) + " variant=" + rc.variant;
    return s;
}

/// "i,j=[v];..." over nonzero U(i, j), or "0".
std::string subfunctor_text(const Skeleton& sk, const SubfunctorData& F) {
    std::string s;
    for (unsigned i = 1; i <= sk.N(); ++i)
        for (unsigned j = 1; j <= sk.N(); ++j) {
            const Subspace& u = F.at(i, j);
            if (u.dim() == 0) continue;
            if (!s.empty()) s += ";";
            s += std::to_string(i) + "," + std::to_string(j) + "=";
            for (std::size_t k = 0; k < u.dim(); ++k) {
                s += "[";
                Vec v = u.basis_vector(k);
                for (std::size_t t = 0; t < v.size(); ++t) s += (t ? "," : "") + std::to_string(v[t]);
                s += "]";
            }
        }
    return s.empty() ? "0" : s;
}

Json enough_json(const EnoughReport& e) {
    Json w = Json::array();
    for (const auto& s : e.witnesses) w.push_back(to_json(s));
    return {{"verdict", tri_name(e.verdict)},
            {"witnesses", std::move(w)},
            {"note", e.note},
            {"characterization_ok", e.characterization_ok}};
}

Json closed_json(const ClosedReport& c) {
    Json j = {{"left", c.left}, {"right", c.right}, {"sequences", c.sequences}};
    j["left_witness"] = c.left_witness ? to_json(*c.left_witness) : Json(nullptr);
    j["right_witness"] = c.right_witness ? to_json(*c.right_witness) : Json(nullptr);
    return j;
}

Json subfunctor_report_json(const Skeleton& sk, const SubfunctorReport& r, const LabOptions& opt) {
    auto t = r.theorem();
    return {{"index", r.candidate_index},
            {"U", to_json(sk, r.F)},
            {"valid", r.valid},
            {"closed_left", r.closed.left},
            {"closed_right", r.closed.right},
            {"closed", closed_json(r.closed)},
            {"hf_axioms", to_json(r.fclass)},
            {"f_class", r.fclass.f_class()},
            {"hf_class", r.fclass.hf_class()},
            {"3x3_budgeted", to_json(r.grid, opt)},
            {"theorem", {{"closed", t.closed}, {"hf", t.hf}, {"three_by_three", t.three_by_three}}},
            {"agree", t.agree()},
            {"enough_proj", enough_json(r.enough_proj)},
            {"enough_inj", enough_json(r.enough_inj)},
            {"proj_list", r.proj},
            {"inj_list", r.inj},
            {"proj_agree", r.proj_agree},
            {"inj_agree", r.inj_agree},
            {"rebuild_ok", r.rebuild_ok},
            {"closure",
             {{"baer_closed", r.closure.baer_closed},
              {"sum_closed", r.closure.sum_closed},
              {"summand_closed", r.closure.summand_closed},
              {"split_exact", r.closure.split_exact}}},
            {"consistent", r.consistent()}};
}

const std::vector<std::string> kSubfunctorHeader = {
    "index", "U", "valid", "closed_left", "closed_right", "f_class", "hf_class", "3x3_grids", "3x3_violations",
    "agree", "enough_proj", "enough_inj", "proj_list", "inj_list", "rebuild_ok", "consistent"};

std::vector<std::string> subfunctor_row(const Skeleton& sk, const SubfunctorReport& r) {
    auto t = r.theorem();
    return {std::to_string(r.candidate_index), subfunctor_text(sk, r.F), b(r.valid), b(r.closed.left),
            b(r.closed.right), b(r.fclass.f_class()), b(r.fclass.hf_class()), std::to_string(r.grid.grids),
            std::to_string(r.grid.violations), b(t.agree()), tri_name(r.enough_proj.verdict),
            tri_name(r.enough_inj.verdict), list_text(r.proj), list_text(r.inj), b(r.rebuild_ok), b(r.consistent())};
}

Json base_json(const char* schema, const RunConfig& rc) {
    return {{"schema", schema}, {"config", to_json(rc)}, {"rng", Rng::kName}};
}

void base_tsv(Tsv& t, const char* schema, const RunConfig& rc) {
    t.meta("schema", schema);
    t.meta("config", config_text(rc));
    t.meta("rng", Rng::kName);
}

}  // namespace

Report ext_table_report(const RunConfig& rc) {
    rc.validate();
    auto sk = build_skeleton(rc.category(), rc.D);
    Report r;
    r.json = base_json(kSchemaExtTable, rc);
    Tsv t;
    base_tsv(t, kSchemaExtTable, rc);
    t.row({"i", "j", "dim_ext"});
    Json rows = Json::array();
    for (unsigned i = 1; i <= rc.N; ++i)
        for (unsigned j = 1; j <= rc.N; ++j) {
            std::size_t d = sk->ext_dim(i, j);
            rows.push_back({{"i", i}, {"j", j}, {"dim", d}});
            t.row({std::to_string(i), std::to_string(j), std::to_string(d)});
        }
    r.json["table"] = std::move(rows);
    r.tsv = t.s.str();
    return r;
}

Report verify_core_report(const RunConfig& rc) {
    rc.validate();
    CoreOptions o;
    o.trials = rc.trials;
    o.seed = rc.seed;
    o.max_dim = rc.D;
    o.inject_fault = rc.inject_fault;
    CoreReport core = run_core_suite(rc.category(), o);
    Report r;
    r.json = base_json(kSchemaVerifyCore, rc);
    Tsv t;
    base_tsv(t, kSchemaVerifyCore, rc);
    std::string warning = rc.trials == 0 ? "no trials were run; the pass is vacuous" : "";
    if (!warning.empty()) t.meta("warning", warning);
    t.row({"check", "instances", "failures", "witness"});
    Json checks = Json::array();
    for (const auto& c : core.checks) {
        Json j = {{"name", c.name}, {"instances", c.instances}, {"failures", c.failures}};
        j["witness"] = c.witness ? Json(*c.witness) : Json(nullptr);
        checks.push_back(std::move(j));
        t.row({c.name, std::to_string(c.instances), std::to_string(c.failures), c.witness ? *c.witness : "-"});
    }
    r.json["checks"] = std::move(checks);
    r.json["ok"] = core.ok();
    r.json["warning"] = warning;
    r.tsv = t.s.str();
    r.exit_code = core.ok() ? 0 : 1;
    return r;
}

Report enumerate_report(const RunConfig& rc, bool parallel) {
    rc.validate();
    auto sk = build_skeleton(rc.category(), rc.D);
    CandidateSpace space(*sk);
    if (space.size() > kEnumerationGuard)
        throw BudgetError("enumerate: " + space.size_text() + " candidates exceed the guard of " +
                          std::to_string(kEnumerationGuard));
    auto fs = enumerate_subfunctors(*sk, parallel);
    LabOptions opt = default_lab_options(*sk, rc.seed, rc.trials);
    auto reports = analyze_all(*sk, fs, opt, parallel);

    Report r;
    r.json = base_json(kSchemaEnumerate, rc);
    r.json["lab"] = to_json(opt);
    r.json["candidates"] = space.size();
    r.json["count"] = fs.size();
    r.json["note"] = "3x3 verdicts come from a bounded grid search; see 3x3_budgeted";
    Tsv t;
    base_tsv(t, kSchemaEnumerate, rc);
    t.meta("candidates", std::to_string(space.size()));
    t.meta("count", std::to_string(fs.size()));
    t.row(kSubfunctorHeader);
    Json rows = Json::array();
    bool ok = true;
    for (const auto& rep : reports) {
        LabOptions o = opt;
        o.seed = Rng::derive(opt.seed, rep.candidate_index);
        rows.push_back(subfunctor_report_json(*sk, rep, o));
        t.row(subfunctor_row(*sk, rep));
        ok = ok && rep.consistent();
    }
    r.json["subfunctors"] = std::move(rows);
    r.json["ok"] = ok;
    r.tsv = t.s.str();
    r.exit_code = ok ? 0 : 1;
    return r;
}

Report subcategory_report(const RunConfig& rc, bool parallel) {
    rc.validate();
    auto sk = build_skeleton(rc.category(), rc.D);
    std::vector<LambdaModule> gens;
    for (unsigned g : rc.generators) gens.push_back(sk->M(g));
    Variant v = rc.variant == "cov" ? Variant::covariant : Variant::contravariant;
    SubfunctorData F = subfunctor_from_subcategory(*sk, gens, v);
    LabOptions opt = default_lab_options(*sk, rc.seed, rc.trials);
    std::vector<EnumeratedSubfunctor> one{{0, F}};
    SubfunctorReport rep = analyze_all(*sk, one, opt, parallel).front();
    LabOptions o = opt;
    o.seed = Rng::derive(opt.seed, 0);
    bool ok = rep.valid && rep.closed.left && rep.closed.right && rep.consistent();

    Report r;
    r.json = base_json(kSchemaSubcategory, rc);
    r.json["lab"] = to_json(opt);
    r.json["subfunctor"] = subfunctor_report_json(*sk, rep, o);
    r.json["ok"] = ok;
    Tsv t;
    base_tsv(t, kSchemaSubcategory, rc);
    std::vector<std::string> header = kSubfunctorHeader;
    header.erase(header.begin());
    auto row = subfunctor_row(*sk, rep);
    row.erase(row.begin());
    t.row(header);
    t.row(row);
    r.tsv = t.s.str();
    r.exit_code = ok ? 0 : 1;
    return r;
}

Report run_command(const RunConfig& rc, bool parallel) {
    if (rc.command == "ext-table") return ext_table_report(rc);
    if (rc.command == "verify-core") return verify_core_report(rc);
    if (rc.command == "enumerate") return enumerate_report(rc, parallel);
    if (rc.command == "subcategory") return subcategory_report(rc, parallel);
    throw InputError("unknown command \"" + rc.command + "\"");
}

}  // namespace exactkit
