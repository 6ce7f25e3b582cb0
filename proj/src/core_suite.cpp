#include "exactkit/core_suite.hpp"

#include <map>

#include "exactkit/diagram.hpp"
#include "exactkit/error.hpp"
#include "exactkit/rng.hpp"

namespace exactkit {

bool CoreReport::ok() const {
    for (const auto& c : checks)
        if (c.failures > 0) return false;
    return true;
}

unsigned long long CoreReport::instances() const {
    unsigned long long n = 0;
    for (const auto& c : checks) n += c.instances;
    return n;
}

namespace {

const char* const kChecks[] = {
    "realize.classify",   "a.pushout_identity", "a.pullback_identity", "b.pushout_composite",
    "c.pullback_composite", "d.mixed_associativity", "e.zero_pushout",  "e.zero_pullback",
    "factorization",      "five_lemma",         "yoneda.equivalence",  "baer.additive",
    "baer.commutative",   "baer.associative",   "baer.neutral",        "baer.inverse",
    "baer.orders",        "les",                "snake",
};

LambdaModule nonzero_module(Rng& rng, const CategoryConfig& cfg, unsigned max_dim) {
    unsigned n = 1 + static_cast<unsigned>(rng.below(max_dim));
    return random_presentation(rng, cfg, random_partition(rng, n, cfg.N)).tgt();
}

/// The same sequence with its middle object conjugated by a random invertible matrix.
ShortExactSeq conjugate_middle(Rng& rng, const ShortExactSeq& e) {
    const unsigned p = e.a().modulus();
    Matrix q = random_invertible(rng, p, e.b().dim());
    LambdaModule b2 = make_module(e.config(), q * e.b().action() * *inverse(q));
    ModuleMorphism phi(e.b(), b2, q);
    return make_ses(compose(phi, e.i()), compose(e.p(), inverse(phi)));
}

std::string vec_text(const Vec& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + "]";
}

}  // namespace

CoreReport run_core_suite(const CategoryConfig& cfg, const CoreOptions& opt) {
    cfg.validate();
    if (opt.max_dim == 0) throw InputError("core suite: max_dim must be positive");
    CoreReport rep;
    rep.trials = opt.trials;
    std::map<std::string, std::size_t> slot;
    for (const char* n : kChecks) {
        slot[n] = rep.checks.size();
        CoreCheck c;
        c.name = n;
        rep.checks.push_back(std::move(c));
    }
    const unsigned p = cfg.p;

    for (unsigned t = 0; t < opt.trials; ++t) {
        Rng rng(Rng::derive(opt.seed, t));
        ExtCache cache;
        auto record = [&](const char* name, bool ok, const std::string& detail) {
            auto& c = rep.checks[slot.at(name)];
            ++c.instances;
            if (!ok) {
                ++c.failures;
                if (!c.witness) c.witness = "trial " + std::to_string(t) + ": " + detail;
            }
        };
        auto baer = [&](const ShortExactSeq& x, const ShortExactSeq& y) {
            return opt.inject_fault ? x : baer_sum(x, y);
        };

        LambdaModule A = nonzero_module(rng, cfg, opt.max_dim);
        LambdaModule C = nonzero_module(rng, cfg, opt.max_dim);
        LambdaModule A2 = random_module(rng, cfg, opt.max_dim);
        LambdaModule A3 = random_module(rng, cfg, opt.max_dim);
        LambdaModule C2 = random_module(rng, cfg, opt.max_dim);
        LambdaModule C3 = random_module(rng, cfg, opt.max_dim);
        auto eca = cache.get(C, A);
        const std::size_t n = eca->dim();

        Vec x = random_vec(rng, p, n);
        Vec x2 = random_vec(rng, p, n);
        Vec x3 = random_vec(rng, p, n);
        ShortExactSeq e = conjugate_middle(rng, eca->realize(x));
        ShortExactSeq e2 = conjugate_middle(rng, eca->realize(x2));
        ShortExactSeq e3 = conjugate_middle(rng, eca->realize(x3));
        const std::string where = describe(e) + " class " + vec_text(x);

        Vec cx = eca->classify(e);
        record("realize.classify", cx == x, where + " classified as " + vec_text(cx));

        record("a.pushout_identity", eca->classify(pushout_ses(e, identity_morphism(A)).seq) == cx, where);
        record("a.pullback_identity", eca->classify(pullback_ses(e, identity_morphism(C)).seq) == cx, where);

        ModuleMorphism f = random_morphism(rng, A, A2);
        ModuleMorphism f2 = random_morphism(rng, A2, A3);
        ModuleMorphism g = random_morphism(rng, C2, C);
        ModuleMorphism g2 = random_morphism(rng, C3, C2);

        {
            auto b = cache.get(C, A3);
            Vec lhs = b->classify(pushout_ses(e, compose(f2, f)).seq);
            Vec rhs = b->classify(pushout_ses(pushout_ses(e, f).seq, f2).seq);
            record("b.pushout_composite", lhs == rhs, where + ": " + vec_text(lhs) + " vs " + vec_text(rhs));
        }
        {
            auto b = cache.get(C3, A);
            Vec lhs = b->classify(pullback_ses(e, compose(g, g2)).seq);
            Vec rhs = b->classify(pullback_ses(pullback_ses(e, g).seq, g2).seq);
            record("c.pullback_composite", lhs == rhs, where + ": " + vec_text(lhs) + " vs " + vec_text(rhs));
        }
        {
            auto b = cache.get(C2, A2);
            Vec lhs = b->classify(pullback_ses(pushout_ses(e, f).seq, g).seq);
            Vec rhs = b->classify(pushout_ses(pullback_ses(e, g).seq, f).seq);
            record("d.mixed_associativity", lhs == rhs, where + ": " + vec_text(lhs) + " vs " + vec_text(rhs));
        }
        {
            auto b = cache.get(C, A2);
            Vec z = b->classify(pushout_ses(e, zero_morphism(A, A2)).seq);
            record("e.zero_pushout", vec_is_zero(z), where + " pushed along zero gives " + vec_text(z));
            auto b2 = cache.get(C2, A);
            Vec z2 = b2->classify(pullback_ses(e, zero_morphism(C2, C)).seq);
            record("e.zero_pullback", vec_is_zero(z2), where + " pulled along zero gives " + vec_text(z2));
        }

        auto po = pushout_ses(e, f);
        ShortExactSeq side = pullback_ses(e, g).seq;
        ShortExactSeq s = direct_sum_ses(po.seq, side);
        auto sa = direct_sum(A2, A);
        auto sb = direct_sum(po.seq.b(), side.b());
        auto sc = direct_sum(C, C2);
        SesMorphism mor = make_ses_morphism(e, s, compose(sa.inclusions[0], f), compose(sb.inclusions[0], po.mor.g),
                                            sc.inclusions[0]);
        {
            auto fac = factor_ses_morphism(mor);
            SesMorphism back = compose(fac.second, fac.first);
            bool ok = back.f == mor.f && back.g == mor.g && back.h == mor.h;
            auto b = cache.get(C, s.a());
            Vec m = b->classify(fac.middle);
            Vec l = b->classify(pushout_ses(e, mor.f).seq);
            Vec r = b->classify(pullback_ses(s, mor.h).seq);
            record("factorization", ok && m == l && m == r,
                   where + ": composite " + (ok ? "ok" : "differs") + ", classes " + vec_text(l) + " " + vec_text(m) +
                       " " + vec_text(r));
        }
        {
            ModuleMorphism iso = compose(random_presentation(rng, cfg, jordan_type(A)), canonical_iso(A));
            auto pi = pushout_ses(e, iso);
            record("five_lemma", is_iso(pi.mor.g), where + ": middle map of a pushout along an isomorphism");
        }
        {
            ShortExactSeq other = conjugate_middle(rng, e);
            ShortExactSeq third = conjugate_middle(rng, other);
            auto w0 = yoneda_equivalent(e, e);
            auto w1 = yoneda_equivalent(e, other);
            auto w2 = yoneda_equivalent(other, e);
            auto w3 = yoneda_equivalent(other, third);
            bool ok = w0 && w1 && w2 && w3;
            if (ok) {
                ModuleMorphism t13 = compose(*w3, *w1);
                ok = compose(t13, e.i()) == third.i() && compose(third.p(), t13) == e.p();
            }
            if (!vec_is_zero(x)) ok = ok && !yoneda_equivalent(e, split_ses(C, A));
            record("yoneda.equivalence", ok, where);
        }

        Vec sum12 = vec_add(cx, eca->classify(e2), p);
        {
            Vec got = eca->classify(baer(e, e2));
            record("baer.additive", got == sum12,
                   where + " plus class " + vec_text(x2) + " gave " + vec_text(got) + ", expected " + vec_text(sum12));
        }
        record("baer.commutative", eca->classify(baer(e2, e)) == eca->classify(baer(e, e2)), where);
        record("baer.associative",
               eca->classify(baer(baer(e, e2), e3)) == eca->classify(baer(e, baer(e2, e3))), where);
        {
            ShortExactSeq z = baer(e, split_ses(C, A));
            record("baer.neutral", yoneda_equivalent(z, e).has_value(), where);
        }
        record("baer.inverse", vec_is_zero(eca->classify(baer(e, negate_ses(e)))), where);
        record("baer.orders", eca->classify(baer_sum_pushout_first(e, e2)) == eca->classify(baer(e, e2)), where);

        {
            unsigned k = 1 + static_cast<unsigned>(rng.below(cfg.N));
            auto les = verify_les(cache, e, indecomposable(cfg, k));
            std::string bad;
            for (const auto& pos : les.positions)
                if (!pos.exact) bad += " " + pos.name;
            record("les", les.ok(), where + " with X = M" + std::to_string(k) + ", inexact at" + bad);
        }
        {
            auto sn = snake_connecting(mor);
            record("snake", sn.ok(), where + ": six-term sequence of a morphism into a direct sum");
        }
    }
    return rep;
}

}  // namespace exactkit
