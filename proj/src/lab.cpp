#include "exactkit/lab.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>

#include "exactkit/error.hpp"

namespace exactkit {

namespace {

/// p^n, saturating at `cap + 1`.
unsigned long long bounded_power(unsigned p, std::size_t n, unsigned long long cap) {
    unsigned long long r = 1;
    for (std::size_t k = 0; k < n; ++k) {
        r *= p;
        if (r > cap) return cap + 1;
    }
    return r;
}

/// All members of s when there are at most `cap`, otherwise `cap` seeded random members.
/// The zero vector is dropped when skip_zero.
std::vector<Vec> sample_subspace(const Subspace& s, unsigned cap, Rng& rng, bool skip_zero) {
    std::vector<Vec> out;
    const unsigned p = s.modulus();
    if (bounded_power(p, s.dim(), cap) <= cap) {
        for (auto& v : s.elements())
            if (!(skip_zero && vec_is_zero(v))) out.push_back(std::move(v));
        return out;
    }
    for (unsigned t = 0; t < cap; ++t) {
        Vec v = s.basis().apply(random_vec(rng, p, s.dim()));
        if (!(skip_zero && vec_is_zero(v))) out.push_back(std::move(v));
    }
    return out;
}

ShortExactSeq canonical_middle(const ShortExactSeq& e) {
    ModuleMorphism phi = canonical_iso(e.b());
    if (phi.tgt() == e.b()) return e;
    return make_ses(compose(phi, e.i()), compose(e.p(), inverse(phi)));
}

std::size_t hom_dim(const LambdaModule& a, const LambdaModule& b) { return hom_basis(a, b).size(); }

bool hom_exact_from(const LambdaModule& m, const ShortExactSeq& e) {
    return hom_dim(m, e.b()) == hom_dim(m, e.a()) + hom_dim(m, e.c());
}

bool hom_exact_into(const LambdaModule& m, const ShortExactSeq& e) {
    return hom_dim(e.b(), m) == hom_dim(e.a(), m) + hom_dim(e.c(), m);
}

std::vector<LambdaModule> nonzero_window(const Skeleton& sk, unsigned dim) {
    auto objs = window_objects(sk.config(), std::min(dim, sk.max_dim()));
    objs.erase(objs.begin());
    return objs;
}

/// Realized classes over window end pairs (Z, X), Z the quotient end. Visits classes of
/// F when `restrict`, of all of Ext otherwise; zero classes are skipped.
template <class Visit>
void for_each_window_class(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt, bool restrict,
                           std::uint64_t stream, Visit&& visit) {
    auto objs = nonzero_window(sk, opt.closed_window_dim);
    for (std::size_t zi = 0; zi < objs.size(); ++zi)
        for (std::size_t xi = 0; xi < objs.size(); ++xi) {
            auto basis = sk.cache().get(objs[zi], objs[xi]);
            if (basis->dim() == 0) continue;
            Subspace s = restrict ? f_subspace(sk, F, *basis) : Subspace::full(sk.p(), basis->dim());
            Rng rng(Rng::derive(opt.seed ^ stream, zi * objs.size() + xi));
            for (const auto& v : sample_subspace(s, opt.class_cap, rng, true))
                if (!visit(objs[zi], objs[xi], basis->realize(v))) return;
        }
}

std::string short_name(const LambdaModule& m) { return partition_string(jordan_type(m)); }

std::string map_name(const ModuleMorphism& f) {
    return short_name(f.src()) + "->" + short_name(f.tgt()) + " " + f.mat().to_string();
}

std::string raw_bytes(const Matrix& m) {
    std::string s = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":";
    s.append(m.data().begin(), m.data().end());
    return s;
}

}  // namespace

LabOptions default_lab_options(const Skeleton& sk, std::uint64_t seed, unsigned trials) {
    LabOptions o;
    o.seed = seed;
    o.trials = trials;
    o.window_dim = std::min(sk.max_dim(), std::max(sk.N(), 3u));
    o.closed_window_dim = std::min(sk.max_dim(), sk.N());
    o.chain_dim = sk.max_dim();
    return o;
}

std::string morphism_key(const ModuleMorphism& f) {
    return raw_bytes(f.src().action()) + "|" + raw_bytes(f.tgt().action()) + "|" + raw_bytes(f.mat());
}

std::vector<char> membership_serial(const Skeleton& sk, const SubfunctorData& F,
                                    const std::vector<ModuleMorphism>& maps) {
    std::vector<char> out(maps.size());
    for (std::size_t k = 0; k < maps.size(); ++k) out[k] = is_F_morphism(sk, F, maps[k]) ? 1 : 0;
    return out;
}

std::vector<char> membership_parallel(const Skeleton& sk, const SubfunctorData& F,
                                      const std::vector<ModuleMorphism>& maps) {
    std::vector<char> out(maps.size());
    std::exception_ptr err;
    const long long n = static_cast<long long>(maps.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long long k = 0; k < n; ++k) {
        try {
            out[k] = is_F_morphism(sk, F, maps[k]) ? 1 : 0;
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

MorphismTable::MorphismTable(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt, bool parallel)
    : sk_(sk), F_(F), objects_(window_objects(sk.config(), std::min(opt.window_dim, sk.max_dim()))) {
    const std::size_t n = objects_.size();
    const unsigned p = sk.p();
    std::vector<ModuleMorphism> flat;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            Block b;
            b.src = s;
            b.tgt = t;
            HomSpace hs(objects_[s], objects_[t]);
            if (bounded_power(p, hs.dim(), opt.exhaustive_cap) <= opt.exhaustive_cap) {
                b.exhaustive = true;
                for (const auto& v : all_vectors(p, hs.dim())) b.maps.push_back(hs.element(v));
            } else {
                Rng rng(Rng::derive(opt.seed, s * n + t));
                std::set<std::string> seen;
                b.maps.push_back(zero_morphism(objects_[s], objects_[t]));
                seen.insert(morphism_key(b.maps.back()));
                for (unsigned k = 0; k < opt.sample_per_pair; ++k) {
                    auto f = hs.element(random_vec(rng, p, hs.dim()));
                    if (seen.insert(morphism_key(f)).second) b.maps.push_back(std::move(f));
                }
            }
            flat.insert(flat.end(), b.maps.begin(), b.maps.end());
            blocks_.push_back(std::move(b));
        }
    auto flags = parallel ? membership_parallel(sk, F, flat) : membership_serial(sk, F, flat);
    std::size_t off = 0;
    for (auto& b : blocks_) {
        b.member.assign(flags.begin() + off, flags.begin() + off + b.maps.size());
        for (std::size_t k = 0; k < b.maps.size(); ++k) memo_.emplace(morphism_key(b.maps[k]), b.member[k] != 0);
        off += b.maps.size();
    }
}

std::size_t MorphismTable::size() const {
    std::size_t n = 0;
    for (const auto& b : blocks_) n += b.maps.size();
    return n;
}

std::vector<char> MorphismTable::blocks_flags() const {
    std::vector<char> out;
    for (const auto& b : blocks_) out.insert(out.end(), b.member.begin(), b.member.end());
    return out;
}

bool MorphismTable::member(const ModuleMorphism& f) {
    auto key = morphism_key(f);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool m = is_F_morphism(sk_, F_, f);
    memo_.emplace(std::move(key), m);
    return m;
}

const AxiomResult& MorphismClassVerdict::get(const std::string& name) const {
    for (const auto& a : axioms)
        if (a.name == name) return a;
    throw InputError("no axiom named " + name);
}

bool MorphismClassVerdict::f_class() const {
    for (const char* n : {"A", "B", "C", "D", "D*"})
        if (!get(n).pass) return false;
    return true;
}

bool MorphismClassVerdict::hf_class() const { return f_class() && get("E").pass && get("E*").pass; }

namespace {

AxiomResult named(const char* n) {
    AxiomResult r;
    r.name = n;
    return r;
}

struct PairSweep {
    AxiomResult& res;
    unsigned long long budget;
    bool step() {
        if (res.checked >= budget) {
            res.truncated = true;
            return false;
        }
        ++res.checked;
        return true;
    }
    void fail(std::string what, std::vector<ModuleMorphism> maps) {
        res.pass = false;
        if (!res.witness) res.witness = Witness{std::move(what), std::move(maps)};
    }
};

/// Composable pairs f in block(s, t), g in block(t, u) with pred(f) and pred2(g).
/// `check` returns false to report a violation.
template <class PredF, class PredG, class Check>
void sweep_pairs(MorphismTable& table, PairSweep& sw, PredF&& pf, PredG&& pg, Check&& check,
                 const std::string& label) {
    const std::size_t n = table.objects().size();
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            const auto& bf = table.block(s, t);
            for (std::size_t fi = 0; fi < bf.maps.size(); ++fi) {
                if (!pf(bf, fi)) continue;
                for (std::size_t u = 0; u < n; ++u) {
                    const auto& bg = table.block(t, u);
                    for (std::size_t gi = 0; gi < bg.maps.size(); ++gi) {
                        if (!pg(bg, gi)) continue;
                        if (!sw.step()) return;
                        const auto& f = bf.maps[fi];
                        const auto& g = bg.maps[gi];
                        if (!check(f, g, bf.member[fi] != 0, bg.member[gi] != 0)) {
                            sw.fail(label + ": f=" + map_name(f) + " g=" + map_name(g), {f, g});
                            return;
                        }
                    }
                }
            }
        }
}

}  // namespace

ChainSet submodule_chains(const CategoryConfig& cfg, unsigned max_dim, unsigned long long subspace_cap) {
    ChainSet out;
    for (const auto& c : window_objects(cfg, max_dim)) {
        if (c.dim() < 2) continue;
        if (count_subspaces(cfg.p, c.dim()) > subspace_cap) {
            out.truncated = true;
            continue;
        }
        std::vector<Subspace> subs;
        for (auto& s : all_subspaces(cfg.p, c.dim()))
            if (s.dim() > 0 && s.dim() < c.dim() && is_submodule(c, s)) subs.push_back(std::move(s));
        for (const auto& b : subs) {
            KernelData bk = submodule(c, b);
            for (const auto& a : subs) {
                if (a.dim() >= b.dim() || !b.contains(a)) continue;
                // a in the coordinates of the object b
                Matrix coords = *solve(bk.map.mat(), a.basis());
                KernelData ak = submodule(bk.object, Subspace::span(coords));
                out.monos.emplace_back(ak.map, bk.map);
                CokernelData q = cokernel(compose(bk.map, ak.map));
                ModuleMorphism g = cokernel(compose(q.map, bk.map)).map;
                out.epis.emplace_back(q.map, g);
            }
        }
    }
    return out;
}

MorphismClassVerdict check_fclass(const Skeleton& sk, const SubfunctorData&, MorphismTable& table,
                                  const ChainSet& chains, const LabOptions& opt) {
    MorphismClassVerdict v;
    const auto& objs = table.objects();
    const LambdaModule& zero = objs.front();

    AxiomResult a = named("A");
    for (const auto& x : objs) {
        for (const auto& z : {zero_morphism(zero, x), zero_morphism(x, zero)}) {
            ++a.checked;
            if (!table.member(z) && a.pass) {
                a.pass = false;
                a.witness = Witness{"(A) zero map not in M_F: " + map_name(z), {z}};
            }
        }
    }
    v.axioms.push_back(std::move(a));

    AxiomResult b = named("B");
    {
        Rng rng(Rng::derive(opt.seed, 0xB));
        const std::size_t n = objs.size();
        for (unsigned t = 0; t < opt.trials && b.pass; ++t) {
            const auto& blk = table.block(rng.below(n), rng.below(n));
            std::size_t k = rng.below(blk.maps.size());
            const auto& f = blk.maps[k];
            ModuleMorphism y = inverse(random_presentation(rng, sk.config(), jordan_type(f.src())));
            ModuleMorphism x = random_presentation(rng, sk.config(), jordan_type(f.tgt()));
            ModuleMorphism g = compose(x, compose(f, y));
            ++b.checked;
            if (table.member(g) != (blk.member[k] != 0)) {
                b.pass = false;
                b.witness = Witness{"(B) membership changes under isomorphisms: f=" + map_name(f), {f, x, y}};
            }
        }
    }
    v.axioms.push_back(std::move(b));

    AxiomResult c = named("C");
    {
        const std::size_t n = objs.size();
        for (std::size_t s = 0; s < n && c.pass; ++s)
            for (std::size_t t = 0; t < n && c.pass; ++t) {
                const auto& blk = table.block(s, t);
                for (std::size_t k = 0; k < blk.maps.size(); ++k) {
                    if (c.checked >= opt.pair_budget) {
                        c.truncated = true;
                        break;
                    }
                    ++c.checked;
                    const auto& f = blk.maps[k];
                    auto kf = kernel(f).map;
                    auto cf = cokernel(f).map;
                    bool rhs = table.member(kf) && table.member(cf);
                    if ((blk.member[k] != 0) != rhs) {
                        c.pass = false;
                        c.witness = Witness{"(C) f in M_F differs from k_f, c_f in M_F: f=" + map_name(f), {f, kf, cf}};
                        break;
                    }
                }
            }
    }
    v.axioms.push_back(std::move(c));

    auto mono = [](const MorphismTable::Block& blk, std::size_t k) { return is_mono(blk.maps[k]); };
    auto epi = [](const MorphismTable::Block& blk, std::size_t k) { return is_epi(blk.maps[k]); };
    auto any = [](const MorphismTable::Block&, std::size_t) { return true; };

    {
        AxiomResult d = named("D");
        PairSweep sw{d, opt.pair_budget};
        sweep_pairs(
            table, sw, [&](const auto& blk, std::size_t k) { return !blk.member[k] && mono(blk, k); }, any,
            [&](const ModuleMorphism& f, const ModuleMorphism& g, bool, bool) {
                auto h = compose(g, f);
                return !(is_mono(h) && table.member(h));
            },
            "(D) gf mono in M_F but f not");
        v.axioms.push_back(std::move(d));
    }
    {
        AxiomResult d = named("D*");
        PairSweep sw{d, opt.pair_budget};
        sweep_pairs(
            table, sw, any, [&](const auto& blk, std::size_t k) { return !blk.member[k] && epi(blk, k); },
            [&](const ModuleMorphism& f, const ModuleMorphism& g, bool, bool) {
                auto h = compose(g, f);
                return !(is_epi(h) && table.member(h));
            },
            "(D*) gf epi in M_F but g not");
        v.axioms.push_back(std::move(d));
    }
    for (int side = 0; side < 2; ++side) {
        AxiomResult e = named(side == 0 ? "E" : "E*");
        const auto& pairs = side == 0 ? chains.monos : chains.epis;
        e.truncated = chains.truncated;
        for (const auto& [f, g] : pairs) {
            if (!table.member(f) || !table.member(g)) continue;
            ++e.checked;
            if (!table.member(compose(g, f))) {
                e.pass = false;
                e.witness = Witness{std::string(side == 0 ? "(E) composite of M_F monos" : "(E*) composite of M_F epis") +
                                        " not in M_F: f=" + map_name(f) + " g=" + map_name(g),
                                    {f, g}};
                break;
            }
        }
        v.axioms.push_back(std::move(e));
    }
    return v;
}

ClosedReport is_closed(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt) {
    ClosedReport r;
    std::map<std::string, Subspace> fmemo;
    auto fsub = [&](const LambdaModule& c, const LambdaModule& a) -> const Subspace& {
        auto key = module_key(c) + "|" + module_key(a);
        auto it = fmemo.find(key);
        if (it == fmemo.end()) it = fmemo.emplace(key, f_subspace(sk, F, c, a)).first;
        return it->second;
    };
    auto& cache = sk.cache();
    for_each_window_class(sk, F, opt, true, 0xC1, [&](const LambdaModule&, const LambdaModule&,
                                                      const ShortExactSeq& raw) {
        ++r.sequences;
        ShortExactSeq e = canonical_middle(raw);
        for (unsigned k = 1; k <= sk.N(); ++k) {
            const LambdaModule& m = sk.M(k);
            if (r.right) {
                const Subspace& fy = fsub(m, e.b());
                if (fy.dim() > 0) {
                    Matrix ci = ext_covariant_matrix(*cache.get(m, e.a()), *cache.get(m, e.b()), e.i());
                    Matrix cp = ext_covariant_matrix(*cache.get(m, e.b()), *cache.get(m, e.c()), e.p());
                    Subspace lhs = intersect(kernel_basis(cp), fy);
                    Subspace rhs = image_of(ci, fsub(m, e.a()));
                    if (!rhs.contains(lhs)) {
                        r.right = false;
                        r.right_witness = Witness{"F(M" + std::to_string(k) + ",-) not exact at the middle of " +
                                                      describe(e),
                                                  {e.i(), e.p()}};
                    }
                }
            }
            if (r.left) {
                const Subspace& fy = fsub(e.b(), m);
                if (fy.dim() > 0) {
                    Matrix cp = ext_contravariant_matrix(*cache.get(e.c(), m), *cache.get(e.b(), m), e.p());
                    Matrix ci = ext_contravariant_matrix(*cache.get(e.b(), m), *cache.get(e.a(), m), e.i());
                    Subspace lhs = intersect(kernel_basis(ci), fy);
                    Subspace rhs = image_of(cp, fsub(e.c(), m));
                    if (!rhs.contains(lhs)) {
                        r.left = false;
                        r.left_witness = Witness{"F(-,M" + std::to_string(k) + ") not exact at the middle of " +
                                                     describe(e),
                                                 {e.i(), e.p()}};
                    }
                }
            }
        }
        return r.right || r.left;
    });
    return r;
}

bool grid_premises(const Skeleton& sk, const SubfunctorData& F, const Grid3x3& g) {
    return is_F_exact(sk, F, g.row(0)) && is_F_exact(sk, F, g.row(2)) && is_F_exact(sk, F, g.col(0)) &&
           is_F_exact(sk, F, g.col(1)) && is_F_exact(sk, F, g.col(2));
}

std::vector<Grid3x3> generate_grids(const Skeleton& sk, const SubfunctorData& F, MorphismTable& table,
                                    const ChainSet& chains, std::uint64_t seed, unsigned count) {
    std::vector<Grid3x3> out;
    if (count == 0) return out;
    Rng rng(seed);

    using Pair = std::pair<ModuleMorphism, ModuleMorphism>;
    auto pick = [&](const std::vector<Pair>& all, unsigned want) {
        std::vector<const Pair*> refs;
        for (const auto& pr : all)
            if (table.member(pr.first) && table.member(pr.second)) refs.push_back(&pr);
        if (refs.size() > want) {
            for (unsigned k = 0; k < want; ++k) std::swap(refs[k], refs[k + rng.below(refs.size() - k)]);
            refs.resize(want);
        }
        return refs;
    };
    auto emit = [&](const Grid3x3& g) {
        if (out.size() >= count) return;
        if (grid_premises(sk, F, g)) out.push_back(g);
        else {
            Grid3x3 t = transpose(g);
            if (grid_premises(sk, F, t)) out.push_back(t);
        }
    };

    const unsigned quota = count * 3 / 8;
    for (const auto* pr : pick(chains.monos, quota)) emit(snake_grid(pr->first, pr->second));
    for (const auto* pr : pick(chains.epis, quota)) emit(epi_snake_grid(pr->first, pr->second));

    auto objs = nonzero_window(sk, sk.max_dim());
    std::vector<std::pair<LambdaModule, LambdaModule>> fpairs;
    for (std::size_t zi = 0; zi < objs.size(); ++zi)
        for (std::size_t xi = 0; xi < objs.size(); ++xi)
            if (objs[zi].dim() + objs[xi].dim() <= sk.max_dim()) fpairs.emplace_back(objs[zi], objs[xi]);
    auto random_f_seq = [&]() {
        const auto& pr = fpairs[rng.below(fpairs.size())];
        auto basis = sk.cache().get(pr.first, pr.second);
        Subspace s = f_subspace(sk, F, *basis);
        return basis->realize(s.basis().apply(random_vec(rng, sk.p(), s.dim())));
    };

    const unsigned long long attempts = 20ULL * count;
    for (unsigned long long k = 0; k < attempts && out.size() < count; ++k) {
        if (k % 2 == 0) {
            const auto& e = objs[rng.below(objs.size())];
            auto q = random_presentation(rng, sk.config(), jordan_type(e));
            const auto& m = q.tgt();
            Subspace b = random_submodule(rng, m, 1 + static_cast<unsigned>(rng.below(2)));
            Subspace d = random_submodule(rng, m, 1 + static_cast<unsigned>(rng.below(2)));
            emit(submodule_grid(m, b, d));
        } else {
            emit(split_grid(random_f_seq(), random_f_seq()));
        }
    }
    return out;
}

ThreeByThreeReport check_3x3(const Skeleton& sk, const SubfunctorData& F, MorphismTable& table,
                             const ChainSet& chains, const LabOptions& opt) {
    ThreeByThreeReport r;
    for (const auto& g : generate_grids(sk, F, table, chains, Rng::derive(opt.seed, 0x33), opt.grid_budget)) {
        ++r.grids;
        for (const auto& o : {g, transpose(g)}) {
            if (!grid_premises(sk, F, o)) continue;
            ++r.applicable;
            if (!is_F_exact(sk, F, o.row(1))) {
                ++r.violations;
                if (!r.witness)
                    r.witness = Witness{"middle row not F-exact: " + describe(o.row(1)),
                                        {o.a, o.b, o.d, o.e, o.g, o.h, o.i, o.j, o.c, o.k, o.l, o.f}};
            }
        }
    }
    return r;
}

const char* tri_name(Tri t) {
    switch (t) {
        case Tri::yes: return "true";
        case Tri::no: return "false";
        default: return "indeterminate";
    }
}

namespace {

constexpr std::size_t kApproximationDimCap = 64;

EnoughReport enough_side(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt, bool projective) {
    EnoughReport r;
    auto idx = projective ? relative_projectives(sk, F) : relative_injectives(sk, F);
    bool capped = false;
    for (unsigned j = 1; j <= sk.N(); ++j) {
        const LambdaModule& c = sk.M(j);
        std::vector<LambdaModule> parts;
        std::vector<ModuleMorphism> maps;
        std::size_t total = 0;
        for (unsigned k : idx) {
            auto hb = projective ? hom_basis(sk.M(k), c) : hom_basis(c, sk.M(k));
            for (auto& f : hb) {
                parts.push_back(sk.M(k));
                maps.push_back(std::move(f));
                total += k;
            }
        }
        if (total > kApproximationDimCap) {
            capped = true;
            r.note += "M" + std::to_string(j) + ": approximation of dim " + std::to_string(total) + " over the cap; ";
            continue;
        }
        auto ds = direct_sum(sk.config(), parts);
        ShortExactSeq e = [&] {
            if (projective) {
                ModuleMorphism pi = zero_morphism(ds.sum, c);
                for (std::size_t t = 0; t < maps.size(); ++t) pi = add(pi, compose(maps[t], ds.projections[t]));
                if (!is_epi(pi)) throw ValidationError("approximation is not epi at M" + std::to_string(j));
                return make_ses(kernel(pi).map, pi);
            }
            ModuleMorphism io = zero_morphism(c, ds.sum);
            for (std::size_t t = 0; t < maps.size(); ++t) io = add(io, compose(ds.inclusions[t], maps[t]));
            if (!is_mono(io)) throw ValidationError("approximation is not mono at M" + std::to_string(j));
            return make_ses(io, cokernel(io).map);
        }();
        if (!is_F_exact(sk, F, e)) {
            r.verdict = Tri::no;
            r.witnesses.clear();
            r.note = "approximation of M" + std::to_string(j) + " is not F-exact";
            return r;
        }
        r.witnesses.push_back(e);
    }
    if (capped) {
        r.witnesses.clear();
        return r;
    }
    r.verdict = Tri::yes;
    for_each_window_class(sk, F, opt, false, projective ? 0xE1 : 0xE2,
                          [&](const LambdaModule&, const LambdaModule&, const ShortExactSeq& e) {
                              bool homex = true;
                              for (unsigned k : idx)
                                  homex = homex && (projective ? hom_exact_from(sk.M(k), e) : hom_exact_into(sk.M(k), e));
                              if (homex != is_F_exact(sk, F, e)) {
                                  r.characterization_ok = false;
                                  r.note = "characterization fails on " + describe(e);
                              }
                              return r.characterization_ok;
                          });
    return r;
}

std::vector<unsigned> by_hom(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt, bool projective) {
    std::vector<unsigned> out;
    for (unsigned k = 1; k <= sk.N(); ++k) {
        bool ok = true;
        for_each_window_class(sk, F, opt, true, projective ? 0xA1 : 0xA2,
                              [&](const LambdaModule&, const LambdaModule&, const ShortExactSeq& e) {
                                  ok = projective ? hom_exact_from(sk.M(k), e) : hom_exact_into(sk.M(k), e);
                                  return ok;
                              });
        if (ok) out.push_back(k);
    }
    return out;
}

}  // namespace

EnoughReport has_enough_projectives(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt) {
    return enough_side(sk, F, opt, true);
}

EnoughReport has_enough_injectives(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt) {
    return enough_side(sk, F, opt, false);
}

std::vector<unsigned> projectives_by_hom(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt) {
    return by_hom(sk, F, opt, true);
}

std::vector<unsigned> injectives_by_hom(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt) {
    return by_hom(sk, F, opt, false);
}

SubfunctorData rebuild_from_morphisms(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt) {
    SubfunctorData r = zero_subfunctor(sk);
    for (unsigned i = 1; i <= sk.N(); ++i)
        for (unsigned j = 1; j <= sk.N(); ++j) {
            const ExtBasis& basis = sk.ext(i, j);
            if (basis.dim() == 0) continue;
            Rng rng(Rng::derive(opt.seed ^ 0xBB, sk.idx(i, j)));
            std::vector<Vec> gens;
            for (const auto& v : sample_subspace(Subspace::full(sk.p(), basis.dim()), opt.class_cap, rng, true)) {
                ShortExactSeq e = basis.realize(v);
                if (is_F_morphism(sk, F, e.i()) && is_F_morphism(sk, F, e.p())) gens.push_back(v);
            }
            r.at(i, j) = Subspace::span(sk.p(), basis.dim(), gens);
        }
    return r;
}

ClosureAgreement closure_agreement(const Skeleton& sk, const SubfunctorData& F, const LabOptions& opt) {
    ClosureAgreement r;
    const unsigned N = sk.N();
    Rng rng(Rng::derive(opt.seed, 0xCA));
    for (unsigned i = 1; i <= N; ++i)
        for (unsigned j = 1; j <= N; ++j) {
            if (!is_F_exact(sk, F, split_ses(sk.M(i), sk.M(j)))) r.split_exact = false;
            const ExtBasis& basis = sk.ext(i, j);
            if (basis.dim() == 0) continue;
            auto us = sample_subspace(F.at(i, j), 16, rng, false);
            for (const auto& u : us)
                for (const auto& v : us)
                    if (!is_F_exact(sk, F, baer_sum(basis.realize(u), basis.realize(v)))) r.baer_closed = false;
        }
    for (const auto& c : nonzero_window(sk, opt.closed_window_dim))
        for (const auto& a : nonzero_window(sk, opt.closed_window_dim))
            if (!is_F_exact(sk, F, split_ses(c, a))) r.split_exact = false;

    for (unsigned i = 1; i <= N; ++i)
        for (unsigned j = 1; j <= N; ++j)
            for (unsigned k = 1; k <= N; ++k)
                for (unsigned l = 1; l <= N; ++l) {
                    const ExtBasis& b1 = sk.ext(i, j);
                    const ExtBasis& b2 = sk.ext(k, l);
                    auto xs = sample_subspace(Subspace::full(sk.p(), b1.dim()), 4, rng, false);
                    auto ys = sample_subspace(Subspace::full(sk.p(), b2.dim()), 4, rng, false);
                    for (const auto& x : xs)
                        for (const auto& y : ys) {
                            bool in1 = F.at(i, j).contains(x), in2 = F.at(k, l).contains(y);
                            bool whole = is_F_exact(sk, F, direct_sum_ses(b1.realize(x), b2.realize(y)));
                            if (in1 && in2 && !whole) r.sum_closed = false;
                            if (whole && !(in1 && in2)) r.summand_closed = false;
                        }
                }
    return r;
}

MainTheoremReport SubfunctorReport::theorem() const {
    MainTheoremReport t;
    t.closed = closed.left && closed.right;
    t.hf = fclass.hf_class();
    t.three_by_three = grid.pass();
    return t;
}

bool SubfunctorReport::consistent() const {
    auto t = theorem();
    bool enough_closed = (enough_proj.verdict != Tri::yes && enough_inj.verdict != Tri::yes) || t.closed;
    return valid && t.agree() && closed.left == closed.right && fclass.f_class() && proj_agree && inj_agree &&
           rebuild_ok && closure.split_exact && closure.summand_closed && closure.baer_closed == closure.sum_closed &&
           enough_closed && enough_proj.characterization_ok && enough_inj.characterization_ok;
}

SubfunctorReport analyze_subfunctor(const Skeleton& sk, const SubfunctorData& F, const ChainSet& chains,
                                    const LabOptions& opt, bool parallel_kernels) {
    SubfunctorReport r;
    r.F = F;
    r.valid = validate_subfunctor(sk, F).valid;
    if (!r.valid) return r;
    MorphismTable table(sk, F, opt, parallel_kernels);
    r.closed = is_closed(sk, F, opt);
    r.fclass = check_fclass(sk, F, table, chains, opt);
    r.grid = check_3x3(sk, F, table, chains, opt);
    r.proj = relative_projectives(sk, F);
    r.inj = relative_injectives(sk, F);
    r.proj_agree = projectives_by_hom(sk, F, opt) == r.proj;
    r.inj_agree = injectives_by_hom(sk, F, opt) == r.inj;
    r.enough_proj = has_enough_projectives(sk, F, opt);
    r.enough_inj = has_enough_injectives(sk, F, opt);
    r.rebuild_ok = rebuild_from_morphisms(sk, F, opt) == F;
    r.closure = closure_agreement(sk, F, opt);
    return r;
}

std::vector<SubfunctorReport> analyze_all(const Skeleton& sk, const std::vector<EnumeratedSubfunctor>& fs,
                                          const LabOptions& opt, bool parallel) {
    std::vector<SubfunctorReport> out(fs.size());
    std::exception_ptr err;
    const long long n = static_cast<long long>(fs.size());
    const ChainSet chains = submodule_chains(sk.config(), std::min(opt.chain_dim, sk.max_dim()), opt.subspace_cap);
    auto one = [&](long long k) {
        LabOptions o = opt;
        o.seed = Rng::derive(opt.seed, fs[k].candidate_index);
        out[k] = analyze_subfunctor(sk, fs[k].F, chains, o, false);
        out[k].candidate_index = fs[k].candidate_index;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long long k = 0; k < n; ++k) {
            try {
                one(k);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        for (long long k = 0; k < n; ++k) one(k);
    }
    return out;
}

}  // namespace exactkit
