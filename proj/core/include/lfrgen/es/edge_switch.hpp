#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "lfrgen/graph.hpp"
#include "lfrgen/random/rng.hpp"

namespace lfrgen {

/// One edge switch: two edge ids (positions in the current edge list) and a
/// direction flag choosing which endpoints are exchanged.
struct SwapDescriptor {
    edge_id a = 0;
    edge_id b = 0;
    bool direction = false;

    friend constexpr auto operator<=>(const SwapDescriptor&, const SwapDescriptor&) = default;
};

struct RunConfig {
    /// Swaps per run; 0 selects the default max(1, m/8).
    std::uint64_t run_size = 0;

    std::uint64_t effective_run_size(std::uint64_t m) const noexcept {
        if (run_size > 0)
            return run_size;
        return m / 8 > 0 ? m / 8 : 1;
    }
};

/// The switched edges for (e_a, e_b, d), each normalized to u <= v.
/// Self-loop results are returned as-is for the caller to detect.
inline std::pair<Edge, Edge> swapped_edges(Edge e_a, Edge e_b, bool direction) {
    if (!direction)
        return {Edge{e_a.u, e_b.u}.normalized(), Edge{e_a.v, e_b.v}.normalized()};
    return {Edge{e_a.u, e_b.v}.normalized(), Edge{e_a.v, e_b.u}.normalized()};
}

/// k swap descriptors with ids uniform over [0, m), resampled until a != b,
/// and a fair direction coin.
std::vector<SwapDescriptor> draw_random_swaps(std::uint64_t m, std::uint64_t k, Rng& rng);
std::vector<SwapDescriptor> draw_random_swaps(std::uint64_t m, std::uint64_t k,
                                              std::uint64_t seed);

/// Sequential reference: applies swaps in order against a positional edge
/// array (ids = positions). A swap is skipped iff a switched edge would be a
/// self-loop or already exists in the current graph. After every
/// `cfg.run_size` swaps the array is re-sorted and ids are re-assigned by
/// position, mirroring the batched pipeline's id semantics; the default
/// single run never re-sorts mid-sequence. Output is sorted.
EdgeList apply_swaps_sequential(EdgeList edges, std::span<const SwapDescriptor> swaps,
                                RunConfig cfg = {.run_size = std::uint64_t(-1)});

/// Multigraph variant. A swap is skipped iff a switched edge is a self-loop,
/// the two switched edges are equal, or a switched edge already has
/// multiplicity >= 1 elsewhere in the current graph (the two source
/// instances themselves excluded). Source edges are addressed by id, so a
/// swap moves one specific stored instance.
MultiEdgeList apply_swaps_sequential_multigraph(MultiEdgeList edges,
                                                std::span<const SwapDescriptor> swaps,
                                                RunConfig cfg = {.run_size = std::uint64_t(-1)});

/// Instrumentation of one batched execution.
struct RunStats {
    std::uint64_t runs = 0;
    std::uint64_t edge_list_scans = 0;
    /// configurations simulated -> number of swaps
    std::map<std::uint64_t, std::uint64_t> configuration_histogram;

    std::uint64_t swaps_total() const {
        std::uint64_t t = 0;
        for (const auto& [k, v] : configuration_histogram)
            t += v;
        return t;
    }

    double fraction_with(std::uint64_t configurations) const {
        const auto total = swaps_total();
        if (total == 0)
            return 0.0;
        auto it = configuration_histogram.find(configurations);
        return it == configuration_histogram.end()
                   ? 0.0
                   : static_cast<double>(it->second) / static_cast<double>(total);
    }
};

/// Batched edge switching: splits the swap sequence into runs and processes
/// each through the six-phase pipeline (request nodes, load nodes, simulate
/// swaps, load existence, perform swaps, update graph) with explicit source
/// and target dependency chains. Produces the same edge multiset as the
/// sequential reference under the same run partition.
///
/// `touched` (optional) collects the values written back by the update
/// phases, i.e. every edge involved in some swap.
EdgeList apply_swaps(EdgeList edges, std::span<const SwapDescriptor> swaps,
                     RunConfig cfg = {}, RunStats* stats = nullptr,
                     std::vector<Edge>* touched = nullptr);

MultiEdgeList apply_swaps_multigraph(MultiEdgeList edges,
                                     std::span<const SwapDescriptor> swaps,
                                     RunConfig cfg = {}, RunStats* stats = nullptr,
                                     std::vector<Edge>* touched = nullptr);

/// Histogram of edge-state configurations simulated per swap.
RunStats dependency_stats(const EdgeList& edges, std::span<const SwapDescriptor> swaps,
                          RunConfig cfg = {});

} // namespace lfrgen
