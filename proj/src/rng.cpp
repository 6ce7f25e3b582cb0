#include "exactkit/rng.hpp"

#include <algorithm>

#include "exactkit/error.hpp"

namespace exactkit {

Vec random_vec(Rng& rng, unsigned p, std::size_t n) {
    Vec v(n);
    for (auto& x : v) x = static_cast<Scalar>(rng.below(p));
    return v;
}

Matrix random_matrix(Rng& rng, unsigned p, std::size_t rows, std::size_t cols) {
    return Matrix(p, rows, cols, random_vec(rng, p, rows * cols));
}

Matrix random_invertible(Rng& rng, unsigned p, std::size_t n) {
    for (;;) {
        Matrix m = random_matrix(rng, p, n, n);
        if (rank(m) == n) return m;
    }
}

ModuleMorphism random_morphism(Rng& rng, const LambdaModule& a, const LambdaModule& b) {
    HomSpace hom(a, b);
    return hom.element(random_vec(rng, a.modulus(), hom.dim()));
}

ModuleMorphism random_automorphism(Rng& rng, const LambdaModule& m) {
    HomSpace hom(m, m);
    for (;;) {
        auto f = hom.element(random_vec(rng, m.modulus(), hom.dim()));
        if (is_iso(f)) return f;
    }
}

std::vector<unsigned> random_partition(Rng& rng, unsigned n, unsigned N) {
    std::vector<unsigned> parts;
    unsigned left = n;
    while (left > 0) {
        unsigned cap = std::min(left, N);
        parts.push_back(1 + static_cast<unsigned>(rng.below(cap)));
        left -= parts.back();
    }
    std::sort(parts.rbegin(), parts.rend());
    return parts;
}

ModuleMorphism random_presentation(Rng& rng, const CategoryConfig& cfg, const std::vector<unsigned>& partition) {
    LambdaModule can = canonical_module(cfg, partition);
    Matrix q = random_invertible(rng, cfg.p, can.dim());
    Matrix q_inv = *inverse(q);
    LambdaModule m = make_module(cfg, q * can.action() * q_inv);
    return {can, m, q};
}

LambdaModule random_module(Rng& rng, const CategoryConfig& cfg, unsigned max_dim) {
    unsigned n = static_cast<unsigned>(rng.below(max_dim + 1));
    return random_presentation(rng, cfg, random_partition(rng, n, cfg.N)).tgt();
}

}  // namespace exactkit
