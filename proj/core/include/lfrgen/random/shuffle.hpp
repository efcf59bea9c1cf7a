#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "lfrgen/graph.hpp"
#include "lfrgen/random/rng.hpp"

namespace lfrgen {

/// Uniform permutation of {0, ..., n-1} (Fisher-Yates).
inline std::vector<std::uint64_t> random_permutation(std::uint64_t n, Rng& rng) {
    std::vector<std::uint64_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::uint64_t{0});
    for (std::uint64_t i = n; i > 1; --i)
        std::swap(perm[i - 1], perm[rng.below(i)]);
    return perm;
}

inline std::vector<std::uint64_t> random_permutation(std::uint64_t n, std::uint64_t seed) {
    Rng rng(seed);
    return random_permutation(n, rng);
}

/// Non-deterministic rounding: floor(x) with probability 1 - frac(x),
/// ceil(x) otherwise, so the expectation equals x.
inline std::uint64_t randomized_round(double x, Rng& rng) {
    if (!(x >= 0.0))
        throw ValidationError("randomized_round requires x >= 0");
    const double fl = std::floor(x);
    const double frac = x - fl;
    auto result = static_cast<std::uint64_t>(fl);
    if (frac > 0.0 && rng.real() < frac)
        ++result;
    return result;
}

/// Splits d into `parts` integers that sum to d, each floor(d/parts) or
/// ceil(d/parts); the slots receiving the remainder are uniformly random.
inline std::vector<std::uint64_t> even_split(std::uint64_t d, std::uint64_t parts,
                                             Rng& rng) {
    if (parts < 1)
        throw ValidationError("even_split requires parts >= 1");
    std::vector<std::uint64_t> out(parts, d / parts);
    std::uint64_t rem = d % parts;
    // Partial Fisher-Yates: the first `rem` entries of a random permutation.
    std::vector<std::uint64_t> slots(parts);
    std::iota(slots.begin(), slots.end(), std::uint64_t{0});
    for (std::uint64_t i = 0; i < rem; ++i) {
        std::swap(slots[i], slots[i + rng.below(parts - i)]);
        out[slots[i]] += 1;
    }
    return out;
}

} // namespace lfrgen
