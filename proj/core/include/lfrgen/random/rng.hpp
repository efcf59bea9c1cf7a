#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lfrgen {

/// Derives an independent sub-stream seed from (seed, tag).
///
/// Identity: FNV-1a over the tag bytes mixed into the seed, then two rounds
/// of the SplitMix64 finalizer. Every module draws from its own sub-stream
/// so that pipelines stay reproducible when stages run in parallel.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) noexcept;

/// Overload for indexed sub-streams (ensemble members, communities, ...).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag,
                          std::uint64_t index) noexcept;

/// Seeded 64-bit generator with unbiased helpers.
///
/// The engine is std::mt19937_64, which the standard pins bit-exactly; all
/// derived draws below avoid std::uniform_*_distribution so that identical
/// seeds produce identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng from(std::uint64_t seed, std::string_view tag) {
        return Rng(derive_seed(seed, tag));
    }

    static Rng from(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
        return Rng(derive_seed(seed, tag, index));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n); unbiased via rejection sampling.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0)
            return 0;
        const std::uint64_t rem = std::uint64_t(-1) % n;
        const std::uint64_t limit = std::uint64_t(-1) - rem;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x > limit);
        return x % n;
    }

    /// Uniform integer in [lo, hi).
    std::uint64_t in(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo); }

    /// Uniform double in [0, 1) with 53 significant bits.
    double real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1); safe as a log/exp argument.
    double positive_real() {
        const auto bits = (engine_() >> 11) | 1u;
        return static_cast<double>(bits) * 0x1.0p-53;
    }

    bool coin() { return engine_() & 1u; }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return splitmix64(splitmix64(seed ^ h));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag,
                                 std::uint64_t index) noexcept {
    return splitmix64(derive_seed(seed, tag) ^ splitmix64(index));
}

} // namespace lfrgen
