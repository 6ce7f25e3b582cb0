#include "exactkit/diagram.hpp"

#include <algorithm>

#include "exactkit/error.hpp"

namespace exactkit {

ShortExactSeq Grid3x3::row(int r) const {
    switch (r) {
        case 0: return make_ses(a, b);
        case 1: return make_ses(d, e);
        case 2: return make_ses(g, h);
        default: throw InputError("grid row index out of range");
    }
}

ShortExactSeq Grid3x3::col(int c_) const {
    switch (c_) {
        case 0: return make_ses(i, k);
        case 1: return make_ses(j, l);
        case 2: return make_ses(c, f);
        default: throw InputError("grid column index out of range");
    }
}

bool GridReport::ok() const {
    if (!commutes) return false;
    for (int r = 0; r < 3; ++r)
        if (!rows_exact[r] || !cols_exact[r]) return false;
    return true;
}

bool is_short_exact(const ModuleMorphism& i, const ModuleMorphism& p) {
    if (!(i.tgt() == p.src())) return false;
    if (!is_mono(i) || !is_epi(p)) return false;
    if (!(p.mat() * i.mat()).is_zero()) return false;
    return i.src().dim() + p.tgt().dim() == i.tgt().dim();
}

GridReport verify_grid(const Grid3x3& x) {
    auto link = [](const ModuleMorphism& first, const ModuleMorphism& second) {
        if (!(first.tgt() == second.src())) throw InputError("verify_grid: adjacent morphisms do not share objects");
    };
    link(x.a, x.b), link(x.d, x.e), link(x.g, x.h);
    link(x.i, x.k), link(x.j, x.l), link(x.c, x.f);
    if (!(x.a.src() == x.i.src()) || !(x.a.tgt() == x.j.src()) || !(x.b.tgt() == x.c.src()) ||
        !(x.d.src() == x.i.tgt()) || !(x.d.tgt() == x.j.tgt()) || !(x.e.tgt() == x.c.tgt()) ||
        !(x.g.src() == x.k.tgt()) || !(x.g.tgt() == x.l.tgt()) || !(x.h.tgt() == x.f.tgt()))
        throw InputError("verify_grid: rows and columns do not meet at common objects");

    GridReport rep;
    if (!(x.j.mat() * x.a.mat() == x.d.mat() * x.i.mat()))
        rep.failed_square = "ja=di";
    else if (!(x.c.mat() * x.b.mat() == x.e.mat() * x.j.mat()))
        rep.failed_square = "cb=ej";
    else if (!(x.l.mat() * x.d.mat() == x.g.mat() * x.k.mat()))
        rep.failed_square = "ld=gk";
    else if (!(x.f.mat() * x.e.mat() == x.h.mat() * x.l.mat()))
        rep.failed_square = "fe=hl";
    rep.commutes = rep.failed_square.empty();
    rep.rows_exact[0] = is_short_exact(x.a, x.b);
    rep.rows_exact[1] = is_short_exact(x.d, x.e);
    rep.rows_exact[2] = is_short_exact(x.g, x.h);
    rep.cols_exact[0] = is_short_exact(x.i, x.k);
    rep.cols_exact[1] = is_short_exact(x.j, x.l);
    rep.cols_exact[2] = is_short_exact(x.c, x.f);
    return rep;
}

Grid3x3 transpose(const Grid3x3& x) {
    Grid3x3 t;
    t.a = x.i, t.b = x.k;
    t.d = x.j, t.e = x.l;
    t.g = x.c, t.h = x.f;
    t.i = x.a, t.k = x.b;
    t.j = x.d, t.l = x.e;
    t.c = x.g, t.f = x.h;
    return t;
}

Grid3x3 snake_grid(const ModuleMorphism& f, const ModuleMorphism& g) {
    if (!(f.tgt() == g.src())) throw InputError("snake_grid: f and g are not composable");
    if (!is_mono(f) || !is_mono(g)) throw InputError("snake_grid: f and g must be monomorphisms");
    const LambdaModule& A = f.src();
    ModuleMorphism h = compose(g, f);
    auto cf = cokernel(f), cg = cokernel(g), ch = cokernel(h);
    LambdaModule zero = zero_module(A.config());

    Grid3x3 x;
    x.a = identity_morphism(A);
    x.b = zero_morphism(A, zero);
    x.d = g;
    x.e = cg.map;
    x.g = ModuleMorphism(cf.object, ch.object, ch.map.mat() * g.mat() * cf.section);
    x.h = ModuleMorphism(ch.object, cg.object, cg.map.mat() * ch.section);
    x.i = f;
    x.k = cf.map;
    x.j = h;
    x.l = ch.map;
    x.c = zero_morphism(zero, cg.object);
    x.f = identity_morphism(cg.object);
    return x;
}

Grid3x3 epi_snake_grid(const ModuleMorphism& f, const ModuleMorphism& g) {
    if (!(f.tgt() == g.src())) throw InputError("epi_snake_grid: f and g are not composable");
    if (!is_epi(f) || !is_epi(g)) throw InputError("epi_snake_grid: f and g must be epimorphisms");
    ModuleMorphism h = compose(g, f);
    const LambdaModule& C = g.tgt();
    auto kf = kernel(f), kg = kernel(g), kh = kernel(h);
    LambdaModule zero = zero_module(C.config());

    auto m = solve(kh.map.mat(), kf.map.mat());
    auto n = solve(kg.map.mat(), f.mat() * kh.map.mat());
    if (!m || !n) throw ValidationError("epi_snake_grid: kernel maps do not factor");

    Grid3x3 x;
    x.a = ModuleMorphism(kf.object, kh.object, *m);
    x.b = ModuleMorphism(kh.object, kg.object, *n);
    x.d = kf.map;
    x.e = f;
    x.g = zero_morphism(zero, C);
    x.h = identity_morphism(C);
    x.i = identity_morphism(kf.object);
    x.k = zero_morphism(kf.object, zero);
    x.j = kh.map;
    x.l = h;
    x.c = kg.map;
    x.f = g;
    return x;
}

bool is_submodule(const LambdaModule& m, const Subspace& s) {
    if (s.ambient() != m.dim()) return false;
    for (std::size_t k = 0; k < s.dim(); ++k)
        if (!s.contains(m.action().apply(s.basis_vector(k)))) return false;
    return true;
}

KernelData submodule(const LambdaModule& m, const Subspace& s) {
    if (!is_submodule(m, s)) throw InputError("submodule: subspace is not Lambda-stable");
    const unsigned p = m.modulus();
    const Matrix& b = s.basis();
    auto xs = solve(b, m.action() * b);
    LambdaModule obj = make_module(m.config(), s.dim() ? *xs : Matrix(p, 0, 0));
    return {obj, ModuleMorphism(obj, m, b)};
}

Subspace random_submodule(Rng& rng, const LambdaModule& m, unsigned generators) {
    std::vector<Vec> gens;
    for (unsigned t = 0; t < generators; ++t) {
        Vec v = random_vec(rng, m.modulus(), m.dim());
        for (unsigned k = 0; k < m.config().N; ++k) {
            gens.push_back(v);
            v = m.action().apply(v);
        }
    }
    return Subspace::span(m.modulus(), m.dim(), gens);
}

Grid3x3 submodule_grid(const LambdaModule& e, const Subspace& bs, const Subspace& ds) {
    Subspace meet = intersect(bs, ds);
    Subspace join = sum(bs, ds);
    auto B = submodule(e, bs), D = submodule(e, ds), BD = submodule(e, meet), BpD = submodule(e, join);

    auto a_mat = solve(B.map.mat(), BD.map.mat());
    auto i_mat = solve(D.map.mat(), BD.map.mat());
    ModuleMorphism a(BD.object, B.object, *a_mat);
    ModuleMorphism i(BD.object, D.object, *i_mat);
    auto qb = cokernel(a);       // B / (B^D)
    auto qd = cokernel(D.map);   // E / D
    auto qk = cokernel(i);       // D / (B^D)
    auto ql = cokernel(B.map);   // E / B
    auto qj = cokernel(BpD.map); // E / (B+D)

    Grid3x3 x;
    x.a = a;
    x.b = qb.map;
    x.d = D.map;
    x.e = qd.map;
    x.g = ModuleMorphism(qk.object, ql.object, ql.map.mat() * D.map.mat() * qk.section);
    x.h = ModuleMorphism(ql.object, qj.object, qj.map.mat() * ql.section);
    x.i = i;
    x.k = qk.map;
    x.j = B.map;
    x.l = ql.map;
    x.c = ModuleMorphism(qb.object, qd.object, qd.map.mat() * B.map.mat() * qb.section);
    x.f = ModuleMorphism(qd.object, qj.object, qj.map.mat() * qd.section);
    return x;
}

Grid3x3 split_grid(const ShortExactSeq& top, const ShortExactSeq& bottom) {
    auto sa = direct_sum(top.a(), bottom.a());
    auto sb = direct_sum(top.b(), bottom.b());
    auto sc = direct_sum(top.c(), bottom.c());
    Grid3x3 x;
    x.a = top.i();
    x.b = top.p();
    x.d = direct_sum_map(top.i(), bottom.i());
    x.e = direct_sum_map(top.p(), bottom.p());
    x.g = bottom.i();
    x.h = bottom.p();
    x.i = sa.inclusions[0];
    x.k = sa.projections[1];
    x.j = sb.inclusions[0];
    x.l = sb.projections[1];
    x.c = sc.inclusions[0];
    x.f = sc.projections[1];
    return x;
}

bool SnakeReport::ok() const {
    if (!choice_independent || !lemma_identities) return false;
    for (const auto& pos : positions)
        if (!pos.exact) return false;
    return true;
}

namespace {

// Particular solution of a X = b, eliminating the columns of a in reverse order.
std::optional<Matrix> solve_reversed(const Matrix& a, const Matrix& b) {
    std::vector<std::size_t> rev(a.cols());
    for (std::size_t k = 0; k < rev.size(); ++k) rev[k] = rev.size() - 1 - k;
    auto x = solve(a.select_cols(rev), b);
    if (!x) return std::nullopt;
    return x->select_rows(rev);
}

}  // namespace

SnakeReport snake_connecting(const SesMorphism& mor) {
    make_ses_morphism(mor.src, mor.tgt, mor.f, mor.g, mor.h);
    const ShortExactSeq& s = mor.src;
    const ShortExactSeq& t = mor.tgt;
    const unsigned p = s.a().modulus();
    auto kf = kernel(mor.f), kg = kernel(mor.g), kh = kernel(mor.h);
    auto cf = cokernel(mor.f), cg = cokernel(mor.g), ch = cokernel(mor.h);

    auto chase = [&](bool reversed) {
        auto lift = reversed ? solve_reversed(s.p().mat(), kh.map.mat()) : solve(s.p().mat(), kh.map.mat());
        if (!lift) throw ValidationError("snake_connecting: p is not surjective");
        auto back = solve(t.i().mat(), mor.g.mat() * *lift);
        if (!back) throw ValidationError("snake_connecting: g.lift does not land in the image of i'");
        return ModuleMorphism(kh.object, cf.object, cf.map.mat() * *back);
    };

    SnakeReport rep;
    rep.delta = chase(false);
    rep.choice_independent = rep.delta == chase(true);

    ModuleMorphism k1(kf.object, kg.object, *solve(kg.map.mat(), s.i().mat() * kf.map.mat()));
    ModuleMorphism k2(kg.object, kh.object, *solve(kh.map.mat(), s.p().mat() * kg.map.mat()));
    ModuleMorphism c1(cf.object, cg.object, cg.map.mat() * t.i().mat() * cf.section);
    ModuleMorphism c2(cg.object, ch.object, ch.map.mat() * t.p().mat() * cg.section);

    rep.positions.push_back({"Ker f", exact_at(Matrix(p, kf.object.dim(), 0), k1.mat())});
    rep.positions.push_back({"Ker g", exact_at(k1.mat(), k2.mat())});
    rep.positions.push_back({"Ker h", exact_at(k2.mat(), rep.delta.mat())});
    rep.positions.push_back({"Coker f", exact_at(rep.delta.mat(), c1.mat())});
    rep.positions.push_back({"Coker g", exact_at(c1.mat(), c2.mat())});
    rep.positions.push_back({"Coker h", exact_at(c2.mat(), Matrix(p, 0, ch.object.dim()))});

    if (mor.h.mat().is_identity() && s.c() == t.c()) {
        rep.t = c1;
        rep.lemma_identities = rep.lemma_identities && is_iso(c1) &&
                               cg.map.mat() * t.i().mat() == c1.mat() * cf.map.mat();
    }
    if (mor.f.mat().is_identity() && s.a() == t.a()) {
        rep.u = c2;
        rep.lemma_identities = rep.lemma_identities && is_iso(c2) &&
                               c2.mat() * cg.map.mat() == ch.map.mat() * t.p().mat();
    }
    return rep;
}

}  // namespace exactkit
