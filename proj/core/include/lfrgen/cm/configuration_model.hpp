#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lfrgen/es/edge_switch.hpp"
#include "lfrgen/graph.hpp"
#include "lfrgen/random/powerlaw.hpp"
#include "lfrgen/random/rng.hpp"

namespace lfrgen {

/// Loops and multi-edge groups found in one scan of a sorted edge list.
struct DefectReport {
    std::vector<edge_id> self_loops; ///< every stored loop instance

    struct MultiGroup {
        Edge value;
        std::uint64_t multiplicity = 0;       ///< f >= 2
        std::vector<edge_id> candidates;      ///< f - 1 member ids (all but one)
    };
    std::vector<MultiGroup> multi_groups;

    bool clean() const noexcept { return self_loops.empty() && multi_groups.empty(); }

    std::uint64_t defect_count() const noexcept {
        std::uint64_t c = self_loops.size();
        for (const auto& g : multi_groups)
            c += g.candidates.size();
        return c;
    }
};

/// Materializes one half-edge per degree unit (node v appears d_v times),
/// preserving id order. Node ids are 1-based.
std::vector<node_id> half_edge_sequence(const DegreeSequence& degrees);

/// Matches adjacent half-edges of a (shuffled) sequence into edges and
/// returns them normalized and sorted. The sequence length must be even.
MultiEdgeList pair_half_edges(std::span<const node_id> shuffled);

/// Configuration Model sample: a uniform random perfect matching of the
/// half-edge multiset. The shuffle sorts half-edges by uniform 64-bit keys;
/// the rare key ties are re-randomized locally.
MultiEdgeList cm_sample(const DegreeSequence& degrees, Rng& rng);
MultiEdgeList cm_sample(const DegreeSequence& degrees, std::uint64_t seed);

/// Expected number of self-loops: (<D^2> - <D>) / (2 (<D> - 1/n)).
double expected_self_loops(const DegreeSequence& degrees);

/// Upper bound on the expected number of multi-edges:
/// ((<D^2> - <D>)^2) / (2 (<D> - 1/n) (<D> - 3/n)).
double expected_multi_edges(const DegreeSequence& degrees);

/// Defect bounds for degrees drawn from Pld[a, b)^2:
/// loops <= (b - a + 1) / (2 (ln(b+1) - ln a)), multi-edges <= its square.
struct PldDefectBounds {
    double self_loops = 0;
    double multi_edges = 0;
};
PldDefectBounds pld_defect_bounds(std::uint64_t a, std::uint64_t b);

/// Detects all illegal edges of a sorted multi edge list in one scan.
DefectReport find_illegal(const MultiEdgeList& edges);

struct RewirePolicy {
    std::uint64_t max_rounds = 64;
    /// Pad each round with random swaps up to max(defect swaps, m/10).
    bool pad_with_random_swaps = true;
};

struct RewireResult {
    EdgeList edges;
    std::uint64_t rounds = 0;
};

/// Repairs a multigraph into a simple graph with the same degrees by
/// repeatedly swapping illegal edges with random partners. The number of
/// swaps per remaining illegal edge doubles every round. Throws
/// LasVegasFailure once the round limit is exceeded.
RewireResult rewire_to_simple(MultiEdgeList edges, Rng& rng, RewirePolicy policy = {});
RewireResult rewire_to_simple(MultiEdgeList edges, std::uint64_t seed,
                              RewirePolicy policy = {});

} // namespace lfrgen
