#include "exactkit/ext.hpp"

#include <mutex>

#include "exactkit/error.hpp"

namespace exactkit {

ProjPresentation projective_presentation(const LambdaModule& c) {
    const CategoryConfig& cfg = c.config();
    const unsigned p = cfg.p, N = cfg.N;
    auto partition = jordan_type(c);
    auto iso = canonical_iso(c);
    Matrix chain = *exactkit::inverse(iso.mat());  // canonical -> c, columns are Jordan chains

    ProjPresentation out;
    out.c = c;
    out.P = canonical_module(cfg, std::vector<unsigned>(partition.size(), N));
    std::vector<Vec> cols;
    std::size_t off = 0;
    for (unsigned s : partition) {
        Vec v = chain.col(off);
        out.generator_images.push_back(v);
        for (unsigned k = 0; k < N; ++k) {
            cols.push_back(v);
            v = c.action().apply(v);
        }
        off += s;
    }
    out.pi = ModuleMorphism(out.P, c, Matrix::from_columns(p, c.dim(), cols));
    auto ker = kernel(out.pi);
    out.omega = ker.object;
    out.iota = ker.map;
    out.seq = make_ses(out.iota, out.pi);
    return out;
}

ExtBasis::ExtBasis(const LambdaModule& c, const LambdaModule& a)
    : c_(c), a_(a), pres_(projective_presentation(c)), hom_(pres_.omega, a) {
    if (!(c.config() == a.config())) throw InputError("ext_basis: config mismatch");
    const unsigned p = c.modulus();
    const std::size_t h = hom_.dim();
    const std::size_t flat = pres_.omega.dim() * a.dim();

    std::vector<Vec> restricted;
    for (const auto& psi : hom_basis(pres_.P, a)) restricted.push_back(hom_.coords(compose(psi, pres_.iota)));
    restr_ = Subspace::span(p, h, restricted);

    // Left inverse of the flattened Hom basis: invert an independent set of rows.
    Matrix left(p, h, flat);
    if (h > 0) {
        auto rows = rref(hom_.columns().transpose()).pivots;
        auto s_inv = exactkit::inverse(hom_.columns().select_rows(rows));
        std::vector<Scalar> sel(h * flat, 0);
        for (std::size_t r = 0; r < h; ++r) sel[r * flat + rows[r]] = 1;
        left = *s_inv * Matrix(p, h, flat, std::move(sel));
    }

    std::vector<bool> is_piv(h, false);
    for (auto r : restr_.pivots()) is_piv[r] = true;
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < h; ++r)
        if (!is_piv[r]) keep.push_back(r);
    std::vector<Vec> red_cols;
    for (std::size_t j = 0; j < h; ++j) red_cols.push_back(restr_.reduce(unit_vec(h, j)));
    Matrix red = Matrix::from_columns(p, h, red_cols).select_rows(keep);
    coord_map_ = red * left;
    section_ = Matrix::identity(p, h).select_cols(keep);

    for (std::size_t k = 0; k < keep.size(); ++k) reps_.push_back(realize(unit_vec(keep.size(), k)));
}

Vec ExtBasis::coords_of_cocycle(const ModuleMorphism& phi) const {
    if (!(phi.src() == pres_.omega) || !(phi.tgt() == a_)) throw InputError("ext: cocycle has wrong ends");
    return coord_map_.apply(phi.mat().flatten());
}

Vec ExtBasis::classify(const ShortExactSeq& e) const {
    if (!(e.c() == c_) || !(e.a() == a_)) throw InputError("classify: sequence ends do not match the basis");
    const unsigned p = c_.modulus(), N = c_.config().N;
    // Lift pi through e.p generator by generator, then restrict the lift to omega.
    std::vector<Vec> cols;
    for (const Vec& v : pres_.generator_images) {
        auto b = solve(e.p().mat(), Matrix::column(p, v));
        if (!b) throw ValidationError("classify: p is not surjective");
        Vec cur = b->col(0);
        for (unsigned k = 0; k < N; ++k) {
            cols.push_back(cur);
            cur = e.b().action().apply(cur);
        }
    }
    Matrix beta = Matrix::from_columns(p, e.b().dim(), cols);
    auto phi = solve(e.i().mat(), beta * pres_.iota.mat());
    if (!phi) throw ValidationError("classify: lift does not restrict into A");
    return coord_map_.apply(phi->flatten());
}

ModuleMorphism ExtBasis::cocycle(const Vec& coords) const {
    if (coords.size() != section_.cols())
        throw InputError("ext: coordinate length mismatch");
    return hom_.element(section_.apply(coords));
}

ShortExactSeq ExtBasis::realize(const Vec& coords) const { return pushout_ses(pres_.seq, cocycle(coords)).seq; }

ExtClass classify(const ShortExactSeq& e, const std::shared_ptr<const ExtBasis>& basis) {
    return {basis, basis->classify(e)};
}

ShortExactSeq realize(const ExtClass& cls) { return cls.basis->realize(cls.coords); }

std::string module_key(const LambdaModule& m) {
    std::string key;
    key.reserve(m.dim() * m.dim() + 16);
    key += std::to_string(m.modulus()) + ":" + std::to_string(m.config().N) + ":" + std::to_string(m.dim()) + ":";
    for (Scalar s : m.action().data()) key.push_back(static_cast<char>(s));
    return key;
}

std::shared_ptr<const ExtBasis> ExtCache::get(const LambdaModule& c, const LambdaModule& a) {
    std::string key = module_key(c) + "|" + module_key(a);
    {
        std::shared_lock lock(mu_);
        auto it = table_.find(key);
        if (it != table_.end()) return it->second;
    }
    auto built = std::make_shared<const ExtBasis>(c, a);
    std::unique_lock lock(mu_);
    return table_.emplace(std::move(key), std::move(built)).first->second;
}

std::size_t ExtCache::size() const {
    std::shared_lock lock(mu_);
    return table_.size();
}

Matrix ext_covariant_matrix(const ExtBasis& src, const ExtBasis& tgt, const ModuleMorphism& f) {
    if (!(src.c() == tgt.c()) || !(src.a() == f.src()) || !(tgt.a() == f.tgt()))
        throw InputError("ext_covariant_matrix: bases do not match f");
    std::vector<Vec> cols;
    for (const auto& rep : src.reps()) cols.push_back(tgt.classify(pushout_ses(rep, f).seq));
    return Matrix::from_columns(src.c().modulus(), tgt.dim(), cols);
}

Matrix ext_covariant_matrix(ExtCache& cache, const LambdaModule& c, const ModuleMorphism& f) {
    return ext_covariant_matrix(*cache.get(c, f.src()), *cache.get(c, f.tgt()), f);
}

Matrix ext_contravariant_matrix(const ExtBasis& src, const ExtBasis& tgt, const ModuleMorphism& g) {
    if (!(src.a() == tgt.a()) || !(src.c() == g.tgt()) || !(tgt.c() == g.src()))
        throw InputError("ext_contravariant_matrix: bases do not match g");
    std::vector<Vec> cols;
    for (const auto& rep : src.reps()) cols.push_back(tgt.classify(pullback_ses(rep, g).seq));
    return Matrix::from_columns(src.a().modulus(), tgt.dim(), cols);
}

Matrix ext_contravariant_matrix(ExtCache& cache, const ModuleMorphism& g, const LambdaModule& a) {
    return ext_contravariant_matrix(*cache.get(g.tgt(), a), *cache.get(g.src(), a), g);
}

ConnectingMaps connecting_matrices(ExtCache& cache, const ShortExactSeq& e, const LambdaModule& x) {
    const unsigned p = e.a().modulus();
    auto xa = cache.get(x, e.a());
    auto cx = cache.get(e.c(), x);
    std::vector<Vec> dcols, ecols;
    for (const auto& f : hom_basis(x, e.c())) dcols.push_back(xa->classify(pullback_ses(e, f).seq));
    for (const auto& f : hom_basis(e.a(), x)) ecols.push_back(cx->classify(pushout_ses(e, f).seq));
    return {Matrix::from_columns(p, xa->dim(), dcols), Matrix::from_columns(p, cx->dim(), ecols)};
}

bool LesReport::ok() const {
    for (const auto& pos : positions)
        if (!pos.exact) return false;
    return true;
}

bool exact_at(const Matrix& first, const Matrix& second) {
    if (first.rows() != second.cols()) throw InputError("exact_at: maps are not composable");
    return image_basis(first) == kernel_basis(second);
}

namespace {

// Matrix of h -> post . h from Hom(x, s) to Hom(x, t), in HomSpace coordinates.
Matrix post_matrix(const HomSpace& from, const HomSpace& to, const ModuleMorphism& post) {
    std::vector<Vec> cols;
    for (const auto& h : from.basis()) cols.push_back(to.coords(compose(post, h)));
    return Matrix::from_columns(post.src().modulus(), to.dim(), cols);
}

Matrix pre_matrix(const HomSpace& from, const HomSpace& to, const ModuleMorphism& pre) {
    std::vector<Vec> cols;
    for (const auto& h : from.basis()) cols.push_back(to.coords(compose(h, pre)));
    return Matrix::from_columns(pre.src().modulus(), to.dim(), cols);
}

}  // namespace

LesReport verify_les(ExtCache& cache, const ShortExactSeq& e, const LambdaModule& x) {
    const unsigned p = e.a().modulus();
    LesReport rep;
    auto conn = connecting_matrices(cache, e, x);

    HomSpace xa(x, e.a()), xb(x, e.b()), xc(x, e.c());
    Matrix h1 = post_matrix(xa, xb, e.i());
    Matrix h2 = post_matrix(xb, xc, e.p());
    Matrix x1 = ext_covariant_matrix(cache, x, e.i());
    Matrix x2 = ext_covariant_matrix(cache, x, e.p());
    rep.positions.push_back({"cov:Hom(X,A)", exact_at(Matrix(p, xa.dim(), 0), h1)});
    rep.positions.push_back({"cov:Hom(X,B)", exact_at(h1, h2)});
    rep.positions.push_back({"cov:Hom(X,C)", exact_at(h2, conn.partial)});
    rep.positions.push_back({"cov:Ext(X,A)", exact_at(conn.partial, x1)});
    rep.positions.push_back({"cov:Ext(X,B)", exact_at(x1, x2)});

    HomSpace cx(e.c(), x), bx(e.b(), x), ax(e.a(), x);
    Matrix g1 = pre_matrix(cx, bx, e.p());
    Matrix g2 = pre_matrix(bx, ax, e.i());
    Matrix y1 = ext_contravariant_matrix(cache, e.p(), x);
    Matrix y2 = ext_contravariant_matrix(cache, e.i(), x);
    rep.positions.push_back({"contra:Hom(C,X)", exact_at(Matrix(p, cx.dim(), 0), g1)});
    rep.positions.push_back({"contra:Hom(B,X)", exact_at(g1, g2)});
    rep.positions.push_back({"contra:Hom(A,X)", exact_at(g2, conn.delta)});
    rep.positions.push_back({"contra:Ext(C,X)", exact_at(conn.delta, y1)});
    rep.positions.push_back({"contra:Ext(B,X)", exact_at(y1, y2)});
    return rep;
}

}  // namespace exactkit
