#include "exactkit/module.hpp"

#include <sstream>

#include "exactkit/error.hpp"

namespace exactkit {

void CategoryConfig::validate() const {
    if (!is_prime(p) || p > kMaxPrime)
        throw InputError("config: p = " + std::to_string(p) + " is not a supported prime");
    if (N < 1) throw InputError("config: nilpotency bound N must be >= 1");
}

LambdaModule make_module(const CategoryConfig& cfg, const Matrix& x) {
    cfg.validate();
    if (!x.square()) throw InputError("make_module: action matrix not square");
    if (x.modulus() != cfg.p) throw InputError("make_module: modulus mismatch");
    if (!x.pow(cfg.N).is_zero())
        throw ValidationError("make_module: action violates X^" + std::to_string(cfg.N) + " = 0");
    LambdaModule m;
    m.cfg_ = cfg;
    m.action_ = x;
    return m;
}

LambdaModule zero_module(const CategoryConfig& cfg) { return make_module(cfg, Matrix(cfg.p, 0, 0)); }

LambdaModule indecomposable(const CategoryConfig& cfg, unsigned i) {
    cfg.validate();
    if (i < 1 || i > cfg.N)
        throw InputError("indecomposable: index " + std::to_string(i) + " outside 1.." + std::to_string(cfg.N));
    return make_module(cfg, Matrix::nilpotent_jordan(cfg.p, i));
}

ModuleMorphism::ModuleMorphism(LambdaModule src, LambdaModule tgt, Matrix mat)
    : src_(std::move(src)), tgt_(std::move(tgt)), mat_(std::move(mat)) {
    if (!(src_.config() == tgt_.config())) throw InputError("morphism: config mismatch");
    if (mat_.rows() != tgt_.dim() || mat_.cols() != src_.dim() || mat_.modulus() != src_.modulus())
        throw InputError("morphism: matrix shape does not match objects");
    if (!(mat_ * src_.action() == tgt_.action() * mat_))
        throw ValidationError("morphism: matrix is not Lambda-linear");
}

ModuleMorphism identity_morphism(const LambdaModule& m) {
    return {m, m, Matrix::identity(m.modulus(), m.dim())};
}

ModuleMorphism zero_morphism(const LambdaModule& src, const LambdaModule& tgt) {
    return {src, tgt, Matrix(src.modulus(), tgt.dim(), src.dim())};
}

ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
    if (!(f.tgt() == g.src())) throw InputError("compose: f.tgt != g.src");
    return {f.src(), g.tgt(), g.mat() * f.mat()};
}

ModuleMorphism add(const ModuleMorphism& f, const ModuleMorphism& g) {
    if (!(f.src() == g.src()) || !(f.tgt() == g.tgt())) throw InputError("add: parallel morphisms required");
    return {f.src(), f.tgt(), f.mat() + g.mat()};
}

ModuleMorphism subtract(const ModuleMorphism& f, const ModuleMorphism& g) {
    if (!(f.src() == g.src()) || !(f.tgt() == g.tgt()))
        throw InputError("subtract: parallel morphisms required");
    return {f.src(), f.tgt(), f.mat() - g.mat()};
}

ModuleMorphism negate(const ModuleMorphism& f) { return {f.src(), f.tgt(), -f.mat()}; }

ModuleMorphism inverse(const ModuleMorphism& f) {
    if (!f.mat().square()) throw ValidationError("inverse: morphism is not an isomorphism");
    auto inv = exactkit::inverse(f.mat());
    if (!inv) throw ValidationError("inverse: morphism is not an isomorphism");
    return {f.tgt(), f.src(), *inv};
}

MorphismKind classify_morphism(const ModuleMorphism& f) {
    std::size_t r = rank(f.mat());
    MorphismKind k;
    k.mono = r == f.src().dim();
    k.epi = r == f.tgt().dim();
    k.iso = k.mono && k.epi;
    k.zero = r == 0;
    return k;
}

bool is_mono(const ModuleMorphism& f) { return classify_morphism(f).mono; }
bool is_epi(const ModuleMorphism& f) { return classify_morphism(f).epi; }
bool is_iso(const ModuleMorphism& f) { return classify_morphism(f).iso; }

std::vector<unsigned> jordan_type(const LambdaModule& m) {
    const unsigned N = m.config().N;
    std::vector<std::size_t> r(N + 2, 0);
    Matrix power = Matrix::identity(m.modulus(), m.dim());
    for (unsigned k = 0; k <= N; ++k) {
        r[k] = rank(power);
        power = power * m.action();
    }
    std::vector<unsigned> parts;
    for (unsigned s = N; s >= 1; --s) {
        std::size_t at_least_s = r[s - 1] - r[s];
        std::size_t at_least_s1 = r[s] - r[s + 1];
        for (std::size_t c = 0; c < at_least_s - at_least_s1; ++c) parts.push_back(s);
    }
    return parts;
}

LambdaModule canonical_module(const CategoryConfig& cfg, const std::vector<unsigned>& partition) {
    std::vector<LambdaModule> parts;
    for (unsigned s : partition) parts.push_back(indecomposable(cfg, s));
    return direct_sum(cfg, parts).sum;
}

ModuleMorphism canonical_iso(const LambdaModule& m) {
    const unsigned p = m.modulus();
    const unsigned N = m.config().N;
    const std::size_t d = m.dim();
    const Matrix& x = m.action();

    // Greedy chain selection, largest blocks first. A set of chains is independent
    // exactly when their socle vectors X^{s-1} v are independent.
    std::vector<Vec> socles;
    std::vector<std::pair<Vec, unsigned>> tops;
    std::size_t covered = 0;
    for (unsigned s = N; s >= 1 && covered < d; --s) {
        Subspace ker_s = kernel_basis(x.pow(s));
        Matrix lower = x.pow(s - 1);
        for (std::size_t k = 0; k < ker_s.dim(); ++k) {
            Vec v = ker_s.basis_vector(k);
            Vec w = lower.apply(v);
            if (vec_is_zero(w)) continue;
            Subspace current = Subspace::span(p, d, socles);
            if (current.contains(w)) continue;
            socles.push_back(w);
            tops.emplace_back(v, s);
            covered += s;
        }
    }
    if (covered != d) throw ValidationError("canonical_iso: failed to build a Jordan basis");

    std::vector<Vec> chain_cols;
    std::vector<unsigned> partition;
    for (auto& [v, s] : tops) {
        partition.push_back(s);
        Vec cur = v;
        for (unsigned k = 0; k < s; ++k) {
            chain_cols.push_back(cur);
            cur = x.apply(cur);
        }
    }
    Matrix phi = Matrix::from_columns(p, d, chain_cols);  // canonical -> m
    auto phi_inv = exactkit::inverse(phi);
    if (!phi_inv) throw ValidationError("canonical_iso: chain basis is singular");
    return {m, canonical_module(m.config(), partition), *phi_inv};
}

std::vector<ModuleMorphism> hom_basis(const LambdaModule& a, const LambdaModule& b) {
    if (!(a.config() == b.config())) throw InputError("hom_basis: config mismatch");
    const unsigned p = a.modulus();
    const std::size_t da = a.dim(), db = b.dim();
    std::vector<ModuleMorphism> out;
    if (da == 0 || db == 0) return out;
    // G X_a - X_b G = 0, in row-major vec(G) coordinates.
    Matrix coeff = kron(Matrix::identity(p, db), a.action().transpose()) -
                   kron(b.action(), Matrix::identity(p, da));
    Subspace sol = kernel_basis(coeff);
    for (std::size_t k = 0; k < sol.dim(); ++k)
        out.emplace_back(a, b, Matrix::unflatten(p, db, da, sol.basis_vector(k)));
    return out;
}

HomSpace::HomSpace(const LambdaModule& a, const LambdaModule& b)
    : src_(a), tgt_(b), basis_(hom_basis(a, b)) {
    std::vector<Vec> cols;
    for (const auto& f : basis_) cols.push_back(f.mat().flatten());
    columns_ = Matrix::from_columns(a.modulus(), a.dim() * b.dim(), cols);
    span_ = Subspace::span(columns_);
}

Vec HomSpace::coords(const ModuleMorphism& f) const {
    if (!(f.src() == src_) || !(f.tgt() == tgt_)) throw InputError("hom coords: morphism not in this Hom space");
    auto x = solve(columns_, Matrix::column(src_.modulus(), f.mat().flatten()));
    if (!x) throw ValidationError("hom coords: morphism outside the span of the basis");
    return x->col(0);
}

ModuleMorphism HomSpace::element(const Vec& c) const {
    if (c.size() != basis_.size()) throw InputError("hom element: coordinate length mismatch");
    Vec flat = columns_.apply(c);
    return {src_, tgt_, Matrix::unflatten(src_.modulus(), tgt_.dim(), src_.dim(), flat)};
}

KernelData kernel(const ModuleMorphism& f) {
    const unsigned p = f.src().modulus();
    Subspace ker = kernel_basis(f.mat());
    const Matrix& k = ker.basis();
    auto xk = solve(k, f.src().action() * k);
    if (!xk) throw ValidationError("kernel: subspace is not Lambda-stable");
    LambdaModule obj = make_module(f.src().config(), ker.dim() ? *xk : Matrix(p, 0, 0));
    return {obj, ModuleMorphism(obj, f.src(), k)};
}

CokernelData cokernel(const ModuleMorphism& f) {
    const unsigned p = f.src().modulus();
    const std::size_t d = f.tgt().dim();
    Subspace im = image_basis(f.mat());
    // Complement spanned by the standard vectors at the non-pivot rows of the
    // canonical image basis; coordinates are read off after reduction.
    std::vector<bool> is_piv(d, false);
    for (auto r : im.pivots()) is_piv[r] = true;
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < d; ++r)
        if (!is_piv[r]) keep.push_back(r);
    std::vector<Vec> reduce_cols;
    for (std::size_t j = 0; j < d; ++j) reduce_cols.push_back(im.reduce(unit_vec(d, j)));
    Matrix c = Matrix::from_columns(p, d, reduce_cols).select_rows(keep);
    Matrix section = Matrix::identity(p, d).select_cols(keep);
    Matrix xq = c * f.tgt().action() * section;
    LambdaModule obj = make_module(f.tgt().config(), xq);
    return {obj, ModuleMorphism(f.tgt(), obj, c), section};
}

ImageFactorization image_factorization(const ModuleMorphism& f) {
    const unsigned p = f.src().modulus();
    Subspace im = image_basis(f.mat());
    const Matrix& b = im.basis();
    auto xi = solve(b, f.tgt().action() * b);
    auto e = solve(b, f.mat());
    if (!xi || !e) throw ValidationError("image_factorization: inconsistent image");
    LambdaModule obj = make_module(f.src().config(), im.dim() ? *xi : Matrix(p, 0, 0));
    return {ModuleMorphism(f.src(), obj, *e), ModuleMorphism(obj, f.tgt(), b)};
}

DirectSum direct_sum(const CategoryConfig& cfg, const std::vector<LambdaModule>& parts) {
    const unsigned p = cfg.p;
    if (parts.empty()) return {zero_module(cfg), {}, {}};
    std::vector<Matrix> actions;
    std::size_t total = 0;
    for (const auto& m : parts) {
        if (!(m.config() == cfg)) throw InputError("direct_sum: config mismatch");
        actions.push_back(m.action());
        total += m.dim();
    }
    LambdaModule sum = make_module(cfg, block_diag(actions));
    DirectSum out{sum, {}, {}};
    std::size_t off = 0;
    for (const auto& m : parts) {
        std::vector<Scalar> inc(total * m.dim(), 0), proj(m.dim() * total, 0);
        for (std::size_t k = 0; k < m.dim(); ++k) {
            inc[(off + k) * m.dim() + k] = 1;
            proj[k * total + off + k] = 1;
        }
        out.inclusions.emplace_back(m, sum, Matrix(p, total, m.dim(), std::move(inc)));
        out.projections.emplace_back(sum, m, Matrix(p, m.dim(), total, std::move(proj)));
        off += m.dim();
    }
    return out;
}

DirectSum direct_sum(const LambdaModule& a, const LambdaModule& b) { return direct_sum(a.config(), {a, b}); }

ModuleMorphism direct_sum_map(const ModuleMorphism& f1, const ModuleMorphism& f2) {
    auto s = direct_sum(f1.src(), f2.src());
    auto t = direct_sum(f1.tgt(), f2.tgt());
    return {s.sum, t.sum, block_diag({f1.mat(), f2.mat()})};
}

ModuleMorphism stack_maps(const ModuleMorphism& f1, const ModuleMorphism& f2) {
    if (!(f1.src() == f2.src())) throw InputError("stack_maps: sources differ");
    auto t = direct_sum(f1.tgt(), f2.tgt());
    return {f1.src(), t.sum, vstack({f1.mat(), f2.mat()})};
}

ModuleMorphism join_maps(const ModuleMorphism& f1, const ModuleMorphism& f2) {
    if (!(f1.tgt() == f2.tgt())) throw InputError("join_maps: targets differ");
    auto s = direct_sum(f1.src(), f2.src());
    return {s.sum, f1.tgt(), hstack({f1.mat(), f2.mat()})};
}

std::string partition_string(const std::vector<unsigned>& partition) {
    std::ostringstream os;
    os << "[";
    for (std::size_t k = 0; k < partition.size(); ++k) os << (k ? "," : "") << partition[k];
    os << "]";
    return os.str();
}

std::string describe(const LambdaModule& m) {
    return "module(dim=" + std::to_string(m.dim()) + ", type=" + partition_string(jordan_type(m)) + ")";
}

}  // namespace exactkit
