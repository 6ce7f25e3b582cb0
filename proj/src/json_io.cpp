#include "exactkit/json_io.hpp"

#include "exactkit/error.hpp"

namespace exactkit {

namespace {

Json rows_of(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(static_cast<int>(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_of_rows(unsigned p, std::size_t rows, std::size_t cols, const Json& data) {
    if (!data.is_array() || data.size() != rows) throw InputError("matrix json: expected " + std::to_string(rows) + " rows");
    std::vector<Scalar> flat;
    flat.reserve(rows * cols);
    for (const auto& row : data) {
        if (!row.is_array() || row.size() != cols) throw InputError("matrix json: ragged row");
        for (const auto& x : row) {
            if (!x.is_number_integer()) throw InputError("matrix json: non-integer entry");
            long long v = x.get<long long>();
            if (v < 0 || v >= static_cast<long long>(p)) throw InputError("matrix json: entry out of range mod p");
            flat.push_back(static_cast<Scalar>(v));
        }
    }
    return Matrix(p, rows, cols, std::move(flat));
}

Json vec_json(const Vec& v) {
    Json a = Json::array();
    for (Scalar x : v) a.push_back(static_cast<int>(x));
    return a;
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("json: missing field \"") + key + "\"");
    return j.at(key);
}

unsigned as_unsigned(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError(std::string("json: bad field \"") + key + "\"");
    return v.get<unsigned>();
}

}  // namespace

Json to_json(const Matrix& m) {
    return {{"p", m.modulus()}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", rows_of(m)}};
}

Matrix matrix_from_json(const Json& j) {
    unsigned p = as_unsigned(j, "p");
    return matrix_of_rows(p, as_unsigned(j, "rows"), as_unsigned(j, "cols"), field(j, "data"));
}

Json to_json(const LambdaModule& m) {
    return {{"p", m.config().p}, {"N", m.config().N}, {"dim", m.dim()}, {"action", rows_of(m.action())}};
}

LambdaModule module_from_json(const Json& j) {
    CategoryConfig cfg{as_unsigned(j, "p"), as_unsigned(j, "N")};
    cfg.validate();
    unsigned d = as_unsigned(j, "dim");
    return make_module(cfg, matrix_of_rows(cfg.p, d, d, field(j, "action")));
}

Json to_json(const ModuleMorphism& f) {
    return {{"src", to_json(f.src())}, {"tgt", to_json(f.tgt())}, {"mat", to_json(f.mat())}};
}

ModuleMorphism morphism_from_json(const Json& j) {
    return ModuleMorphism(module_from_json(field(j, "src")), module_from_json(field(j, "tgt")),
                          matrix_from_json(field(j, "mat")));
}

Json to_json(const ShortExactSeq& e) {
    return {{"a", to_json(e.a())}, {"b", to_json(e.b())}, {"c", to_json(e.c())},
            {"i", to_json(e.i().mat())}, {"p", to_json(e.p().mat())}};
}

ShortExactSeq ses_from_json(const Json& j) {
    LambdaModule a = module_from_json(field(j, "a"));
    LambdaModule b = module_from_json(field(j, "b"));
    LambdaModule c = module_from_json(field(j, "c"));
    ModuleMorphism i(a, b, matrix_from_json(field(j, "i")));
    ModuleMorphism p(b, c, matrix_from_json(field(j, "p")));
    return make_ses(a, i, b, p, c);
}

Json to_json(const SesMorphism& m) { return {{"f", to_json(m.f)}, {"g", to_json(m.g)}, {"h", to_json(m.h)}}; }

Json to_json(const Skeleton& sk, const SubfunctorData& F) {
    Json pairs = Json::object();
    for (unsigned i = 1; i <= sk.N(); ++i)
        for (unsigned j = 1; j <= sk.N(); ++j) {
            const Subspace& u = F.at(i, j);
            Json basis = Json::array();
            for (std::size_t k = 0; k < u.dim(); ++k) basis.push_back(vec_json(u.basis_vector(k)));
            pairs[std::to_string(i) + "," + std::to_string(j)] = {
                {"dim", u.dim()}, {"ext_dim", sk.ext_dim(i, j)}, {"basis", std::move(basis)}};
        }
    return {{"pairs", std::move(pairs)}};
}

SubfunctorData subfunctor_from_json(const Skeleton& sk, const Json& j) {
    const Json& pairs = field(j, "pairs");
    SubfunctorData F = zero_subfunctor(sk);
    for (unsigned i = 1; i <= sk.N(); ++i)
        for (unsigned k = 1; k <= sk.N(); ++k) {
            std::string key = std::to_string(i) + "," + std::to_string(k);
            if (!pairs.contains(key)) throw InputError("subfunctor json: missing pair " + key);
            const Json& basis = field(pairs.at(key), "basis");
            const std::size_t n = sk.ext_dim(i, k);
            std::vector<Vec> gens;
            for (const auto& v : basis) {
                if (!v.is_array() || v.size() != n) throw InputError("subfunctor json: bad basis vector at " + key);
                Vec x;
                for (const auto& s : v) {
                    long long t = s.get<long long>();
                    if (t < 0 || t >= static_cast<long long>(sk.p())) throw InputError("subfunctor json: entry out of range");
                    x.push_back(static_cast<Scalar>(t));
                }
                gens.push_back(std::move(x));
            }
            F.at(i, k) = Subspace::span(sk.p(), n, gens);
        }
    return F;
}

Json to_json(const Grid3x3& g) {
    Json j = {{"A", to_json(g.A())}, {"B", to_json(g.B())}, {"C", to_json(g.C())},
              {"D", to_json(g.D())}, {"E", to_json(g.E())}, {"G", to_json(g.G())},
              {"H", to_json(g.H())}, {"I", to_json(g.I())}, {"J", to_json(g.J())}};
    const std::pair<const char*, const ModuleMorphism*> maps[] = {
        {"a", &g.a}, {"b", &g.b}, {"d", &g.d}, {"e", &g.e}, {"g", &g.g}, {"h", &g.h},
        {"i", &g.i}, {"j", &g.j}, {"c", &g.c}, {"k", &g.k}, {"l", &g.l}, {"f", &g.f}};
    for (const auto& [name, m] : maps) j[name] = to_json(m->mat());
    return j;
}

Json to_json(const Witness& w) {
    Json maps = Json::array();
    for (const auto& f : w.maps) maps.push_back(to_json(f));
    return {{"what", w.what}, {"maps", std::move(maps)}};
}

Json to_json(const MorphismClassVerdict& v) {
    Json j = Json::object();
    for (const auto& a : v.axioms) {
        Json x = {{"pass", a.pass}, {"checked", a.checked}, {"truncated", a.truncated}};
        x["witness"] = a.witness ? to_json(*a.witness) : Json(nullptr);
        j[a.name] = std::move(x);
    }
    return j;
}

Json to_json(const LabOptions& o) {
    return {{"window_dim", o.window_dim},       {"closed_window_dim", o.closed_window_dim},
            {"seed", o.seed},                   {"trials", o.trials},
            {"exhaustive_cap", o.exhaustive_cap}, {"sample_per_pair", o.sample_per_pair},
            {"pair_budget", o.pair_budget},     {"grid_budget", o.grid_budget},
            {"class_cap", o.class_cap},         {"chain_dim", o.chain_dim},
            {"subspace_cap", o.subspace_cap}};
}

Json to_json(const ThreeByThreeReport& r, const LabOptions& opt) {
    Json j = {{"grids", r.grids},
              {"applicable", r.applicable},
              {"violations", r.violations},
              {"budget", opt.grid_budget},
              {"seed", opt.seed},
              {"note", "bounded search; no violation within the budget is not a proof"}};
    j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    return j;
}

std::string canonical(const Json& j) { return j.dump(); }

}  // namespace exactkit
