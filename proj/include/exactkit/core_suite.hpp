#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exactkit/ext.hpp"

namespace exactkit {

struct CoreCheck {
    std::string name;
    unsigned long long instances = 0;
    unsigned long long failures = 0;
    std::optional<std::string> witness;  ///< first failure
};

struct CoreReport {
    std::vector<CoreCheck> checks;
    unsigned trials = 0;
    bool ok() const;
    unsigned long long instances() const;
};

struct CoreOptions {
    unsigned trials = 200;
    std::uint64_t seed = 0;
    unsigned max_dim = 3;  ///< end objects of the random instances
    /// Negative control: Baer sums silently drop their second summand.
    bool inject_fault = false;
};

/// Yoneda laws (a)-(e), the factorization of morphisms of sequences, the group laws
/// of the Baer sum and the long exact sequences, on seeded random instances.
/// Trial t uses the stream Rng::derive(seed, t); checks are run in a fixed order.
CoreReport run_core_suite(const CategoryConfig& cfg, const CoreOptions& opt);

}  // namespace exactkit
