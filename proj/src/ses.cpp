#include "exactkit/ses.hpp"

#include "exactkit/error.hpp"

namespace exactkit {

ShortExactSeq make_ses(const ModuleMorphism& i, const ModuleMorphism& p) {
    if (!(i.tgt() == p.src())) throw InputError("make_ses: i.tgt != p.src");
    if (!is_mono(i)) throw ValidationError("i not mono");
    if (!is_epi(p)) throw ValidationError("p not epi");
    if (!(p.mat() * i.mat()).is_zero()) throw ValidationError("p.i != 0");
    // With p.i = 0 and both ranks maximal, im i = ker p iff dimensions add up.
    if (i.src().dim() + p.tgt().dim() != i.tgt().dim()) throw ValidationError("im i != ker p");
    ShortExactSeq e;
    e.i_ = i;
    e.p_ = p;
    return e;
}

ShortExactSeq make_ses(const LambdaModule& a, const ModuleMorphism& i, const LambdaModule& b,
                       const ModuleMorphism& p, const LambdaModule& c) {
    if (!(i.src() == a) || !(i.tgt() == b) || !(p.src() == b) || !(p.tgt() == c))
        throw InputError("make_ses: objects do not match the maps");
    return make_ses(i, p);
}

ShortExactSeq split_ses(const LambdaModule& c, const LambdaModule& a) {
    auto s = direct_sum(a, c);
    return make_ses(s.inclusions[0], s.projections[1]);
}

SesMorphism make_ses_morphism(const ShortExactSeq& src, const ShortExactSeq& tgt, const ModuleMorphism& f,
                              const ModuleMorphism& g, const ModuleMorphism& h) {
    if (!(f.src() == src.a()) || !(f.tgt() == tgt.a()) || !(g.src() == src.b()) || !(g.tgt() == tgt.b()) ||
        !(h.src() == src.c()) || !(h.tgt() == tgt.c()))
        throw InputError("ses morphism: component objects do not match");
    if (!(g.mat() * src.i().mat() == tgt.i().mat() * f.mat()))
        throw ValidationError("ses morphism: left square does not commute");
    if (!(h.mat() * src.p().mat() == tgt.p().mat() * g.mat()))
        throw ValidationError("ses morphism: right square does not commute");
    return {src, tgt, f, g, h};
}

SesMorphism identity_ses_morphism(const ShortExactSeq& e) {
    return {e, e, identity_morphism(e.a()), identity_morphism(e.b()), identity_morphism(e.c())};
}

SesMorphism compose(const SesMorphism& second, const SesMorphism& first) {
    if (!(first.tgt == second.src)) throw InputError("compose: ses morphisms not composable");
    return make_ses_morphism(first.src, second.tgt, compose(second.f, first.f), compose(second.g, first.g),
                             compose(second.h, first.h));
}

std::optional<ModuleMorphism> yoneda_equivalent(const ShortExactSeq& e1, const ShortExactSeq& e2) {
    if (!(e1.a() == e2.a()) || !(e1.c() == e2.c())) throw InputError("yoneda_equivalent: end objects differ");
    const unsigned p = e1.a().modulus();
    const std::size_t n1 = e1.b().dim(), n2 = e2.b().dim();
    if (n1 != n2) return std::nullopt;
    // Unknown G (n2 x n1), row-major vec. Equations: G X1 - X2 G = 0, G i1 = i2, p2 G = p1.
    Matrix eq_lin = kron(Matrix::identity(p, n2), e1.b().action().transpose()) -
                    kron(e2.b().action(), Matrix::identity(p, n1));
    Matrix eq_i = kron(Matrix::identity(p, n2), e1.i().mat().transpose());
    Matrix eq_p = kron(e2.p().mat(), Matrix::identity(p, n1));
    Matrix lhs = vstack({eq_lin, eq_i, eq_p});
    Vec rhs(eq_lin.rows(), 0);
    for (auto v : e2.i().mat().flatten()) rhs.push_back(v);
    for (auto v : e1.p().mat().flatten()) rhs.push_back(v);
    auto sol = solve(lhs, Matrix::column(p, rhs));
    if (!sol) return std::nullopt;
    ModuleMorphism g(e1.b(), e2.b(), Matrix::unflatten(p, n2, n1, sol->col(0)));
    if (!is_iso(g)) throw ValidationError("yoneda_equivalent: witness is not an isomorphism");
    return g;
}

InducedSes pushout_ses(const ShortExactSeq& e, const ModuleMorphism& f) {
    if (!(f.src() == e.a())) throw InputError("pushout_ses: f.src != e.a");
    const unsigned p = e.a().modulus();
    auto s = direct_sum(e.b(), f.tgt());
    ModuleMorphism phi = stack_maps(e.i(), negate(f));
    auto q = cokernel(phi);
    ModuleMorphism l = compose(q.map, s.inclusions[0]);
    ModuleMorphism j = compose(q.map, s.inclusions[1]);
    Matrix p0 = hstack({e.p().mat(), Matrix(p, e.c().dim(), f.tgt().dim())});
    ModuleMorphism r(q.object, e.c(), p0 * q.section);
    ShortExactSeq out = make_ses(j, r);
    return {out, make_ses_morphism(e, out, f, l, identity_morphism(e.c()))};
}

InducedSes pullback_ses(const ShortExactSeq& e, const ModuleMorphism& g) {
    if (!(g.tgt() == e.c())) throw InputError("pullback_ses: g.tgt != e.c");
    const unsigned p = e.a().modulus();
    auto s = direct_sum(e.b(), g.src());
    ModuleMorphism psi = join_maps(e.p(), negate(g));
    auto k = kernel(psi);
    ModuleMorphism w = compose(s.projections[0], k.map);
    ModuleMorphism q = compose(s.projections[1], k.map);
    Matrix i0 = vstack({e.i().mat(), Matrix(p, g.src().dim(), e.a().dim())});
    auto jm = solve(k.map.mat(), i0);
    if (!jm) throw ValidationError("pullback_ses: (i, 0) does not factor through the kernel");
    ModuleMorphism j(e.a(), k.object, *jm);
    ShortExactSeq out = make_ses(j, q);
    return {out, make_ses_morphism(out, e, identity_morphism(e.a()), w, g)};
}

ShortExactSeq direct_sum_ses(const ShortExactSeq& e1, const ShortExactSeq& e2) {
    return make_ses(direct_sum_map(e1.i(), e2.i()), direct_sum_map(e1.p(), e2.p()));
}

namespace {

void require_same_ends(const ShortExactSeq& e1, const ShortExactSeq& e2) {
    if (!(e1.a() == e2.a()) || !(e1.c() == e2.c())) throw InputError("baer_sum: end objects differ");
}

ModuleMorphism diagonal(const LambdaModule& c) { return stack_maps(identity_morphism(c), identity_morphism(c)); }
ModuleMorphism codiagonal(const LambdaModule& a) { return join_maps(identity_morphism(a), identity_morphism(a)); }

}  // namespace

ShortExactSeq baer_sum(const ShortExactSeq& e1, const ShortExactSeq& e2) {
    require_same_ends(e1, e2);
    auto sum = direct_sum_ses(e1, e2);
    auto pb = pullback_ses(sum, diagonal(e1.c()));
    return pushout_ses(pb.seq, codiagonal(e1.a())).seq;
}

ShortExactSeq baer_sum_pushout_first(const ShortExactSeq& e1, const ShortExactSeq& e2) {
    require_same_ends(e1, e2);
    auto sum = direct_sum_ses(e1, e2);
    auto po = pushout_ses(sum, codiagonal(e1.a()));
    return pullback_ses(po.seq, diagonal(e1.c())).seq;
}

ShortExactSeq negate_ses(const ShortExactSeq& e) { return pushout_ses(e, negate(identity_morphism(e.a()))).seq; }

SesFactorization factor_ses_morphism(const SesMorphism& mor) {
    make_ses_morphism(mor.src, mor.tgt, mor.f, mor.g, mor.h);
    const ShortExactSeq& e = mor.src;
    const ShortExactSeq& t = mor.tgt;
    auto po = pushout_ses(e, mor.f);
    // Rebuild the cokernel data of (i, -f) to read off g' from [g i'].
    ModuleMorphism phi = stack_maps(e.i(), negate(mor.f));
    auto q = cokernel(phi);
    if (!(q.object == po.seq.b())) throw ValidationError("factor_ses_morphism: inconsistent pushout object");
    Matrix gi = hstack({mor.g.mat(), t.i().mat()});
    ModuleMorphism gp(po.seq.b(), t.b(), gi * q.section);
    SesMorphism second = make_ses_morphism(po.seq, t, identity_morphism(t.a()), gp, mor.h);
    return {po.seq, po.mor, second};
}

std::string describe(const ShortExactSeq& e) {
    return "ses(" + describe(e.a()) + " -> " + describe(e.b()) + " -> " + describe(e.c()) + ")";
}

}  // namespace exactkit
