#include "lfrgen/es/edge_switch.hpp"

#include <algorithm>
#include <unordered_map>

namespace lfrgen {

namespace {

struct EdgeHash {
    std::size_t operator()(const Edge& e) const noexcept {
        std::uint64_t h = e.u * 0x9E3779B97F4A7C15ull;
        h ^= e.v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

using MultiplicityMap = std::unordered_map<Edge, std::uint64_t, EdgeHash>;

void validate_swaps(std::span<const SwapDescriptor> swaps, std::uint64_t m) {
    for (const auto& s : swaps) {
        if (s.a >= m || s.b >= m)
            throw ValidationError("swap id out of range");
        if (s.a == s.b)
            throw ValidationError("swap must reference two distinct edge ids");
    }
}

std::uint64_t mult_of(const MultiplicityMap& counts, const Edge& e) {
    auto it = counts.find(e);
    return it == counts.end() ? 0 : it->second;
}

template <bool Multigraph>
std::vector<Edge> sequential_impl(std::vector<Edge> edges,
                                  std::span<const SwapDescriptor> swaps, RunConfig cfg) {
    if (!is_sorted_edge_list(edges))
        throw ValidationError("edge list must be lexicographically sorted");
    if (!Multigraph && !is_simple_edge_list(edges))
        throw ValidationError("edge list must be simple");
    validate_swaps(swaps, edges.size());

    MultiplicityMap counts;
    for (const auto& e : edges)
        counts[e] += 1;

    const auto run_size = cfg.effective_run_size(edges.size());
    std::uint64_t in_run = 0;
    for (const auto& swap : swaps) {
        if (in_run == run_size) {
            std::stable_sort(edges.begin(), edges.end());
            in_run = 0;
        }
        ++in_run;

        const Edge x = edges[swap.a];
        const Edge y = edges[swap.b];
        const auto [xs, ys] = swapped_edges(x, y, swap.direction);

        bool illegal = xs.is_loop() || ys.is_loop();
        if (!illegal) {
            if constexpr (Multigraph) {
                // Forbidden if a switched edge would collide with any stored
                // instance other than the two sources, or with its sibling.
                const auto elsewhere = [&](const Edge& t) {
                    std::uint64_t c = mult_of(counts, t);
                    c -= (x == t) ? 1 : 0;
                    c -= (y == t) ? 1 : 0;
                    return c;
                };
                illegal = (xs == ys) || elsewhere(xs) > 0 || elsewhere(ys) > 0;
            } else {
                illegal = mult_of(counts, xs) > 0 || mult_of(counts, ys) > 0;
            }
        }
        if (illegal)
            continue;

        if (--counts[x] == 0)
            counts.erase(x);
        if (--counts[y] == 0)
            counts.erase(y);
        counts[xs] += 1;
        counts[ys] += 1;
        edges[swap.a] = xs;
        edges[swap.b] = ys;
    }

    std::stable_sort(edges.begin(), edges.end());
    return edges;
}

} // namespace

std::vector<SwapDescriptor> draw_random_swaps(std::uint64_t m, std::uint64_t k, Rng& rng) {
    if (m < 2)
        throw ValidationError("drawing swaps requires at least two edges");
    std::vector<SwapDescriptor> swaps;
    swaps.reserve(static_cast<std::size_t>(k));
    for (std::uint64_t i = 0; i < k; ++i) {
        const auto a = rng.below(m);
        auto b = rng.below(m);
        while (b == a)
            b = rng.below(m);
        swaps.push_back(SwapDescriptor{a, b, rng.coin()});
    }
    return swaps;
}

std::vector<SwapDescriptor> draw_random_swaps(std::uint64_t m, std::uint64_t k,
                                              std::uint64_t seed) {
    Rng rng(seed);
    return draw_random_swaps(m, k, rng);
}

EdgeList apply_swaps_sequential(EdgeList edges, std::span<const SwapDescriptor> swaps,
                                RunConfig cfg) {
    return sequential_impl<false>(std::move(edges), swaps, cfg);
}

MultiEdgeList apply_swaps_sequential_multigraph(MultiEdgeList edges,
                                                std::span<const SwapDescriptor> swaps,
                                                RunConfig cfg) {
    return sequential_impl<true>(std::move(edges), swaps, cfg);
}

} // namespace lfrgen
