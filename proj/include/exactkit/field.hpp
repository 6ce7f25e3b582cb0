#pragma once

#include <cstdint>

namespace exactkit {

using Scalar = std::uint8_t;

/// Largest modulus representable with byte storage.
inline constexpr unsigned kMaxPrime = 251;

constexpr bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

namespace fp {

// Operands are assumed reduced, i.e. a, b < p.
constexpr Scalar add(Scalar a, Scalar b, unsigned p) {
    unsigned s = unsigned(a) + b;
    s -= p & (0u - unsigned(s >= p));
    return Scalar(s);
}

constexpr Scalar sub(Scalar a, Scalar b, unsigned p) {
    unsigned s = unsigned(a) + p - b;
    s -= p & (0u - unsigned(s >= p));
    return Scalar(s);
}

constexpr Scalar neg(Scalar a, unsigned p) { return sub(0, a, p); }

constexpr Scalar mul(Scalar a, Scalar b, unsigned p) { return Scalar((unsigned(a) * b) % p); }

constexpr Scalar pow(Scalar a, unsigned e, unsigned p) {
    Scalar r = 1 % p;
    while (e) {
        if (e & 1u) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

/// Multiplicative inverse by Fermat; a must be nonzero.
constexpr Scalar inv(Scalar a, unsigned p) { return pow(a, p - 2, p); }

/// Canonical residue of an arbitrary integer.
constexpr Scalar reduce(long long v, unsigned p) {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    return Scalar(r);
}

}  // namespace fp
}  // namespace exactkit
