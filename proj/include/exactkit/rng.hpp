#pragma once

#include <cstdint>
#include <vector>

#include "exactkit/module.hpp"

namespace exactkit {

/// xorshift64* (generator id "xorshift64star-v1"), state seeded through splitmix64.
///
///   x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;  return x * 0x2545F4914F6CDD1D;
class Rng {
public:
    static constexpr const char* kName = "xorshift64star-v1";

    explicit Rng(std::uint64_t seed) : state_(splitmix64(seed)) {
        if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
    }

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    /// Uniform in [0, n) by rejection; n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % n;
    }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    /// Seed of an independent stream for work item `index`.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        return splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
    }

private:
    std::uint64_t state_;
};

Vec random_vec(Rng& rng, unsigned p, std::size_t n);
Matrix random_matrix(Rng& rng, unsigned p, std::size_t rows, std::size_t cols);
Matrix random_invertible(Rng& rng, unsigned p, std::size_t n);
/// A uniformly random element of Hom(a, b).
ModuleMorphism random_morphism(Rng& rng, const LambdaModule& a, const LambdaModule& b);
/// A random automorphism of m (rejection sampling from Hom(m, m)).
ModuleMorphism random_automorphism(Rng& rng, const LambdaModule& m);
/// A random partition of n with parts <= N.
std::vector<unsigned> random_partition(Rng& rng, unsigned n, unsigned N);
/// The canonical module of `partition` conjugated by a random invertible matrix, together
/// with the isomorphism from the canonical module onto it.
ModuleMorphism random_presentation(Rng& rng, const CategoryConfig& cfg, const std::vector<unsigned>& partition);
/// A random module of dimension <= max_dim, not in canonical form.
LambdaModule random_module(Rng& rng, const CategoryConfig& cfg, unsigned max_dim);

}  // namespace exactkit
