#include "exactkit/subfunctor.hpp"

#include <cstdio>

#include "exactkit/error.hpp"

namespace exactkit {

Skeleton::Skeleton(const CategoryConfig& cfg, unsigned max_dim)
    : cfg_(cfg), max_dim_(max_dim), cache_(std::make_shared<ExtCache>()),
      comp_(std::make_shared<ComponentCache>()) {
    cfg_.validate();
    if (max_dim < cfg.N) throw InputError("skeleton: max-dim must be >= N");
    const unsigned N = cfg.N;
    for (unsigned i = 1; i <= N; ++i) m_.push_back(indecomposable(cfg, i));
    for (unsigned i = 1; i <= N; ++i)
        for (unsigned j = 1; j <= N; ++j) {
            ext_.push_back(cache_->get(M(i), M(j)));
            hom_.push_back(hom_basis(M(i), M(j)));
        }
    cov_.resize(N * N * N);
    contra_.resize(N * N * N);
    for (unsigned i = 1; i <= N; ++i)
        for (unsigned j = 1; j <= N; ++j)
            for (unsigned k = 1; k <= N; ++k) {
                for (const auto& f : hom(j, k)) cov_[idx3(i, j, k)].push_back(ext_covariant_matrix(ext(i, j), ext(i, k), f));
                for (const auto& g : hom(k, i))
                    contra_[idx3(i, j, k)].push_back(ext_contravariant_matrix(ext(i, j), ext(k, j), g));
            }
}

std::unique_ptr<Skeleton> build_skeleton(const CategoryConfig& cfg, unsigned max_dim) {
    return std::make_unique<Skeleton>(cfg, max_dim);
}

std::shared_ptr<const ComponentMap> Skeleton::components(const std::vector<unsigned>& c_parts,
                                                         const std::vector<unsigned>& a_parts) const {
    std::string key = partition_string(c_parts) + "|" + partition_string(a_parts);
    {
        std::shared_lock lock(comp_->mu);
        auto it = comp_->table.find(key);
        if (it != comp_->table.end()) return it->second;
    }
    auto cm = std::make_shared<ComponentMap>();
    std::vector<LambdaModule> cs, as;
    for (unsigned s : c_parts) cs.push_back(M(s));
    for (unsigned t : a_parts) as.push_back(M(t));
    auto dc = direct_sum(cfg_, cs), da = direct_sum(cfg_, as);
    cm->c = dc.sum;
    cm->a = da.sum;
    cm->c_parts = c_parts;
    cm->a_parts = a_parts;
    cm->basis = cache_->get(cm->c, cm->a);
    for (std::size_t s = 0; s < c_parts.size(); ++s)
        for (std::size_t t = 0; t < a_parts.size(); ++t) {
            const ExtBasis& target = ext(c_parts[s], a_parts[t]);
            std::vector<Vec> cols;
            for (const auto& rep : cm->basis->reps()) {
                auto pb = pullback_ses(rep, dc.inclusions[s]).seq;
                cols.push_back(target.classify(pushout_ses(pb, da.projections[t]).seq));
            }
            cm->blocks.push_back({c_parts[s], a_parts[t], Matrix::from_columns(cfg_.p, target.dim(), cols)});
        }
    std::unique_lock lock(comp_->mu);
    return comp_->table.emplace(std::move(key), std::move(cm)).first->second;
}

SubfunctorData zero_subfunctor(const Skeleton& sk) {
    SubfunctorData F;
    F.N = sk.N();
    for (unsigned i = 1; i <= sk.N(); ++i)
        for (unsigned j = 1; j <= sk.N(); ++j) F.U.emplace_back(sk.p(), sk.ext_dim(i, j));
    return F;
}

SubfunctorData full_subfunctor(const Skeleton& sk) {
    SubfunctorData F;
    F.N = sk.N();
    for (unsigned i = 1; i <= sk.N(); ++i)
        for (unsigned j = 1; j <= sk.N(); ++j) F.U.push_back(Subspace::full(sk.p(), sk.ext_dim(i, j)));
    return F;
}

namespace {

std::string pair_name(unsigned i, unsigned j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace

SubfunctorVerdict validate_subfunctor(const Skeleton& sk, const SubfunctorData& F) {
    const unsigned N = sk.N();
    if (F.N != N || F.U.size() != N * N) return {false, "shape does not match the skeleton"};
    for (unsigned i = 1; i <= N; ++i)
        for (unsigned j = 1; j <= N; ++j) {
            const Subspace& u = F.at(i, j);
            if (u.ambient() != sk.ext_dim(i, j)) return {false, "U" + pair_name(i, j) + " has the wrong ambient"};
            for (std::size_t b = 0; b < u.dim(); ++b) {
                Vec v = u.basis_vector(b);
                for (unsigned k = 1; k <= N; ++k) {
                    const auto& cov = sk.covariant(i, j, k);
                    for (std::size_t t = 0; t < cov.size(); ++t)
                        if (!F.at(i, k).contains(cov[t].apply(v)))
                            return {false, "pushout of U" + pair_name(i, j) + " basis vector " + std::to_string(b) +
                                               " along Hom(M_" + std::to_string(j) + ",M_" + std::to_string(k) +
                                               ")[" + std::to_string(t) + "] leaves U" + pair_name(i, k)};
                    const auto& con = sk.contravariant(i, j, k);
                    for (std::size_t t = 0; t < con.size(); ++t)
                        if (!F.at(k, j).contains(con[t].apply(v)))
                            return {false, "pullback of U" + pair_name(i, j) + " basis vector " + std::to_string(b) +
                                               " along Hom(M_" + std::to_string(k) + ",M_" + std::to_string(i) +
                                               ")[" + std::to_string(t) + "] leaves U" + pair_name(k, j)};
                }
            }
        }
    return {true, ""};
}

SubfunctorData generate_subfunctor(const Skeleton& sk, const std::vector<SeedClass>& seeds) {
    SubfunctorData F = zero_subfunctor(sk);
    const unsigned N = sk.N(), p = sk.p();
    auto add = [&](unsigned i, unsigned j, const Vec& v) {
        if (F.at(i, j).contains(v)) return false;
        F.at(i, j) = sum(F.at(i, j), Subspace::span(p, v.size(), {v}));
        return true;
    };
    for (const auto& s : seeds) {
        if (s.i < 1 || s.i > N || s.j < 1 || s.j > N) throw InputError("generate_subfunctor: seed pair out of range");
        if (s.coords.size() != sk.ext_dim(s.i, s.j)) throw InputError("generate_subfunctor: seed length mismatch");
        add(s.i, s.j, s.coords);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (unsigned i = 1; i <= N; ++i)
            for (unsigned j = 1; j <= N; ++j)
                for (std::size_t b = 0; b < F.at(i, j).dim(); ++b) {
                    Vec v = F.at(i, j).basis_vector(b);
                    for (unsigned k = 1; k <= N; ++k) {
                        for (const auto& m : sk.covariant(i, j, k)) changed |= add(i, k, m.apply(v));
                        for (const auto& m : sk.contravariant(i, j, k)) changed |= add(k, j, m.apply(v));
                    }
                }
    }
    return F;
}

CanonicalClass canonical_class(const Skeleton& sk, const ShortExactSeq& e) {
    if (!(e.config() == sk.config())) throw InputError("is_F_exact: sequence config differs from the skeleton");
    ModuleMorphism alpha = canonical_iso(e.a());
    ModuleMorphism gamma = canonical_iso(e.c());
    ShortExactSeq t = e;
    if (!(alpha.tgt() == e.a())) t = pushout_ses(t, alpha).seq;
    if (!(gamma.tgt() == e.c())) t = pullback_ses(t, inverse(gamma)).seq;
    auto comp = sk.components(jordan_type(e.c()), jordan_type(e.a()));
    return {comp, comp->basis->classify(t)};
}

bool is_F_exact(const Skeleton& sk, const SubfunctorData& F, const ShortExactSeq& e) {
    if (e.a().dim() == 0 || e.c().dim() == 0) return true;
    auto cc = canonical_class(sk, e);
    for (const auto& blk : cc.comp->blocks)
        if (!F.at(blk.ci, blk.aj).contains(blk.proj.apply(cc.coords))) return false;
    return true;
}

Subspace f_subspace(const Skeleton& sk, const SubfunctorData& F, const ExtBasis& basis) {
    const unsigned p = sk.p();
    const std::size_t n = basis.dim();
    if (n == 0) return Subspace(p, 0);
    std::vector<Vec> canon;
    std::shared_ptr<const ComponentMap> comp;
    for (const auto& rep : basis.reps()) {
        auto cc = canonical_class(sk, rep);
        comp = cc.comp;
        canon.push_back(cc.coords);
    }
    Matrix transport = Matrix::from_columns(p, comp->basis->dim(), canon);
    std::vector<Matrix> projs;
    std::vector<Vec> gens;
    std::size_t total = 0;
    for (const auto& blk : comp->blocks) total += blk.proj.rows();
    std::size_t off = 0;
    for (const auto& blk : comp->blocks) {
        projs.push_back(blk.proj);
        const Subspace& u = F.at(blk.ci, blk.aj);
        for (std::size_t b = 0; b < u.dim(); ++b) {
            Vec g(total, 0);
            Vec v = u.basis_vector(b);
            std::copy(v.begin(), v.end(), g.begin() + off);
            gens.push_back(std::move(g));
        }
        off += blk.proj.rows();
    }
    Matrix k = vstack(projs) * transport;
    return preimage(k, Subspace::span(p, total, gens));
}

Subspace f_subspace(const Skeleton& sk, const SubfunctorData& F, const LambdaModule& c, const LambdaModule& a) {
    return f_subspace(sk, F, *sk.cache().get(c, a));
}

bool is_F_morphism(const Skeleton& sk, const SubfunctorData& F, const ModuleMorphism& f) {
    auto im = image_factorization(f);
    auto k = kernel(f);
    if (!is_F_exact(sk, F, make_ses(k.map, im.epi))) return false;
    auto q = cokernel(f);
    return is_F_exact(sk, F, make_ses(im.mono, q.map));
}

namespace {

void partitions_rec(unsigned n, unsigned cap, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (unsigned s = std::min(n, cap); s >= 1; --s) {
        cur.push_back(s);
        partitions_rec(n - s, s, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<unsigned>> window_partitions(unsigned N, unsigned max_dim) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    for (unsigned n = 0; n <= max_dim; ++n) partitions_rec(n, N, cur, out);
    return out;
}

std::vector<LambdaModule> window_objects(const CategoryConfig& cfg, unsigned max_dim) {
    std::vector<LambdaModule> out;
    for (const auto& part : window_partitions(cfg.N, max_dim)) out.push_back(canonical_module(cfg, part));
    return out;
}

SubfunctorData subfunctor_from_subcategory(const Skeleton& sk, const std::vector<LambdaModule>& generators,
                                           Variant variant) {
    SubfunctorData F = full_subfunctor(sk);
    for (unsigned i = 1; i <= sk.N(); ++i)
        for (unsigned j = 1; j <= sk.N(); ++j) {
            Subspace& u = F.at(i, j);
            for (const auto& x : generators) {
                if (!(x.config() == sk.config())) throw InputError("subfunctor_from_subcategory: config mismatch");
                if (variant == Variant::covariant) {
                    const ExtBasis& tgt = *sk.cache().get(x, sk.M(j));
                    for (const auto& f : hom_basis(x, sk.M(i)))
                        u = intersect(u, kernel_basis(ext_contravariant_matrix(sk.ext(i, j), tgt, f)));
                } else {
                    const ExtBasis& tgt = *sk.cache().get(sk.M(i), x);
                    for (const auto& f : hom_basis(sk.M(j), x))
                        u = intersect(u, kernel_basis(ext_covariant_matrix(sk.ext(i, j), tgt, f)));
                }
            }
        }
    return F;
}

std::vector<unsigned> relative_projectives(const Skeleton& sk, const SubfunctorData& F) {
    std::vector<unsigned> out;
    for (unsigned k = 1; k <= sk.N(); ++k) {
        bool proj = true;
        for (unsigned j = 1; j <= sk.N(); ++j) proj = proj && F.at(k, j).dim() == 0;
        if (proj) out.push_back(k);
    }
    return out;
}

std::vector<unsigned> relative_injectives(const Skeleton& sk, const SubfunctorData& F) {
    std::vector<unsigned> out;
    for (unsigned k = 1; k <= sk.N(); ++k) {
        bool inj = true;
        for (unsigned i = 1; i <= sk.N(); ++i) inj = inj && F.at(i, k).dim() == 0;
        if (inj) out.push_back(k);
    }
    return out;
}

CandidateSpace::CandidateSpace(const Skeleton& sk) : N_(sk.N()) {
    for (unsigned i = 1; i <= N_; ++i)
        for (unsigned j = 1; j <= N_; ++j) {
            unsigned long long count = count_subspaces(sk.p(), sk.ext_dim(i, j));
            exact_ *= count;
            if (total_ > kEnumerationGuard || count > kEnumerationGuard) {
                total_ = kEnumerationGuard + 1;  // saturate; options are never materialized
            } else {
                total_ *= count;
            }
        }
    if (total_ > kEnumerationGuard) return;
    for (unsigned i = 1; i <= N_; ++i)
        for (unsigned j = 1; j <= N_; ++j) options_.push_back(all_subspaces(sk.p(), sk.ext_dim(i, j)));
}

SubfunctorData CandidateSpace::candidate(unsigned long long index) const {
    if (index >= total_ || options_.empty()) throw InputError("candidate index out of range");
    SubfunctorData F;
    F.N = N_;
    F.U.resize(options_.size());
    for (std::size_t q = options_.size(); q-- > 0;) {
        const auto& opts = options_[q];
        F.U[q] = opts[index % opts.size()];
        index /= opts.size();
    }
    return F;
}

std::string CandidateSpace::size_text() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.0Lf", exact_);
    return buf;
}

unsigned long long candidate_count(const Skeleton& sk) { return CandidateSpace(sk).size(); }

std::vector<char> validate_candidates_serial(const Skeleton& sk, const CandidateSpace& space) {
    std::vector<char> ok(space.size(), 0);
    for (unsigned long long x = 0; x < space.size(); ++x) ok[x] = validate_subfunctor(sk, space.candidate(x)).valid;
    return ok;
}

std::vector<char> validate_candidates_parallel(const Skeleton& sk, const CandidateSpace& space) {
    const long long n = static_cast<long long>(space.size());
    std::vector<char> ok(space.size(), 0);
#pragma omp parallel for schedule(dynamic, 64)
    for (long long x = 0; x < n; ++x) ok[x] = validate_subfunctor(sk, space.candidate(x)).valid;
    return ok;
}

std::vector<EnumeratedSubfunctor> enumerate_subfunctors(const Skeleton& sk, bool parallel) {
    CandidateSpace space(sk);
    if (space.size() > kEnumerationGuard)
        throw BudgetError("enumerate: " + space.size_text() + " candidates exceed the guard of " +
                          std::to_string(kEnumerationGuard));
    auto ok = parallel ? validate_candidates_parallel(sk, space) : validate_candidates_serial(sk, space);
    std::vector<EnumeratedSubfunctor> out;
    for (unsigned long long x = 0; x < space.size(); ++x)
        if (ok[x]) out.push_back({x, space.candidate(x)});
    return out;
}

}  // namespace exactkit
