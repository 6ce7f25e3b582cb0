#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactkit/ext.hpp"
#include "exactkit/rng.hpp"

namespace exactkit {

/// A 3x3 diagram with the letters used for the 3x3-lemma property:
///
///     A --a--> B --b--> C
///     |i       |j       |c
///     D --d--> E --e--> G
///     |k       |l       |f
///     H --g--> I --h--> J
///
/// Objects are the ends of the morphisms.
struct Grid3x3 {
    ModuleMorphism a, b, d, e, g, h;  ///< rows
    ModuleMorphism i, j, c, k, l, f;  ///< columns

    const LambdaModule& A() const { return a.src(); }
    const LambdaModule& B() const { return a.tgt(); }
    const LambdaModule& C() const { return b.tgt(); }
    const LambdaModule& D() const { return d.src(); }
    const LambdaModule& E() const { return d.tgt(); }
    const LambdaModule& G() const { return e.tgt(); }
    const LambdaModule& H() const { return g.src(); }
    const LambdaModule& I() const { return g.tgt(); }
    const LambdaModule& J() const { return h.tgt(); }

    /// Row r (0-based) or column c as a sequence; throws if not short exact.
    ShortExactSeq row(int r) const;
    ShortExactSeq col(int c) const;
};

struct GridReport {
    bool commutes = false;
    std::string failed_square;  ///< "ja=di", "cb=ej", "ld=gk" or "fe=hl"; empty when commuting
    bool rows_exact[3] = {false, false, false};
    bool cols_exact[3] = {false, false, false};
    bool ok() const;
};

/// Flags are computed independently of each other. Throws InputError when adjacent
/// morphisms do not share objects.
GridReport verify_grid(const Grid3x3& grid);

/// Reflect along the diagonal: rows become columns.
Grid3x3 transpose(const Grid3x3& grid);

/// True when (i, p) is a short exact pair; never throws on non-exact data.
bool is_short_exact(const ModuleMorphism& i, const ModuleMorphism& p);

/// For monos f: A -> B and g: B -> C with h = g f, the grid with rows
/// (A = A -> 0), (B -> C -> Coker g), (Coker f -> Coker h -> Coker g).
Grid3x3 snake_grid(const ModuleMorphism& f, const ModuleMorphism& g);
/// For epis f: A -> B and g: B -> C with h = g f, the grid with rows
/// (Ker f -> Ker h -> Ker g), (Ker f -> A -> B), (0 -> C = C).
Grid3x3 epi_snake_grid(const ModuleMorphism& f, const ModuleMorphism& g);

/// Lambda-stable subspace s of m as an object with its inclusion.
KernelData submodule(const LambdaModule& m, const Subspace& s);
bool is_submodule(const LambdaModule& m, const Subspace& s);
/// Submodule generated by a few random vectors.
Subspace random_submodule(Rng& rng, const LambdaModule& m, unsigned generators);

/// The grid of quotients for submodules b, d of e:
///   (b^d, b, b/b^d), (d, e, e/d), (d/b^d, e/b, e/(b+d)).
Grid3x3 submodule_grid(const LambdaModule& e, const Subspace& b, const Subspace& d);

/// Block sum of two sequences arranged as a grid: rows e1 (+) 0, e1 (+) e2, 0 (+) e2 style
/// split completion (every row and column is a direct sum of e1, e2 and zero pieces).
Grid3x3 split_grid(const ShortExactSeq& top, const ShortExactSeq& bottom);

struct SnakeReport {
    ModuleMorphism delta;  ///< Ker h -> Coker f
    bool choice_independent = false;
    std::vector<LesPosition> positions;  ///< Ker f, Ker g, Ker h, Coker f, Coker g, Coker h
    std::optional<ModuleMorphism> t;     ///< Coker f -> Coker g when h = 1
    std::optional<ModuleMorphism> u;     ///< Coker g -> Coker h when f = 1
    bool lemma_identities = true;
    bool ok() const;
};

/// Connecting map of the snake lemma for (f, g, h): src -> tgt, built by lifting
/// through p, applying g and pulling back through i'.
SnakeReport snake_connecting(const SesMorphism& mor);

}  // namespace exactkit
