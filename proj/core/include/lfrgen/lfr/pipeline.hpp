#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lfrgen/ca/community_assignment.hpp"
#include "lfrgen/graph.hpp"
#include "lfrgen/random/rng.hpp"

namespace lfrgen {

struct LfrParams {
    std::uint64_t n = 1000;

    std::uint64_t degree_min = 10;   ///< inclusive
    std::uint64_t degree_max = 50;   ///< inclusive
    double degree_exponent = 2.0;    ///< gamma

    std::uint64_t overlap_nodes = 0; ///< O: nodes with `memberships` communities
    std::uint64_t memberships = 1;   ///< nu for the overlapping nodes

    std::uint64_t community_min = 20;  ///< inclusive
    std::uint64_t community_max = 100; ///< inclusive
    double community_exponent = 1.0;   ///< beta

    double mixing = 0.2; ///< mu in (0, 1)

    enum class Sampler { fdsm_hh, cm_es };
    Sampler sampler = Sampler::fdsm_hh;

    double swaps_factor = 10.0;    ///< random swaps per edge (FDSM path)
    double cm_swaps_factor = 5.0;  ///< post-repair swaps per edge (CM path)
    std::uint64_t rewire_round_limit = 64;
    std::uint64_t intra_sequential_threshold = 10000; ///< nodes; smaller
                                                      ///< communities use the
                                                      ///< in-memory switcher

    void validate() const;
};

/// Degrees, membership counts and the external/internal split of one run.
struct NodePlan {
    DegreeSequence degrees;                     ///< non-decreasing
    std::vector<std::uint64_t> nu;              ///< memberships per node
    std::vector<std::uint64_t> external_degree; ///< randomized round of mu*d
    std::vector<std::uint64_t> internal_degree; ///< d - external
    std::vector<std::vector<std::uint64_t>> membership_degrees; ///< even split
};

NodePlan sample_node_plan(const LfrParams& params, std::uint64_t seed);

struct CommunitySizesSample {
    CommunitySizes sizes;                 ///< non-increasing, sums to T
    std::vector<std::size_t> adjusted;    ///< indices whose size was modified
};

/// Draws community sizes from the community Pld until their sum reaches T,
/// then removes the overshoot: shrink the largest community if it stays
/// >= community_min, otherwise spread unit decrements round-robin; if the
/// drawn set cannot cover T at all, the last community is re-fit to the gap.
CommunitySizesSample sample_community_sizes(const LfrParams& params, std::uint64_t total,
                                            std::uint64_t seed);

struct GlobalGraphResult {
    EdgeList edges; ///< 0-based, simple, no intra-community edge remains
    std::uint64_t dropped_half_edges = 0;   ///< non-graphical residual
    std::uint64_t rewire_rounds = 0;        ///< forbidden-edge rounds
    std::uint64_t dropped_forbidden = 0;    ///< edges removed at the limit
};

/// Inter-community graph on the external degrees: realized deterministically,
/// randomized by swaps (or sampled via the configuration model and repaired),
/// then iteratively rewired until no edge joins two co-members.
GlobalGraphResult build_global_graph(const std::vector<std::uint64_t>& external_degree,
                                     const CommunityAssignment& ground_truth,
                                     const LfrParams& params, std::uint64_t seed);

struct IntraGraphs {
    /// One sorted edge list (global 0-based node ids) per community.
    std::vector<EdgeList> by_community;
    std::uint64_t dropped_half_edges = 0; ///< odd community degree sums etc.
};

/// Per-membership internal degree, grouping key for the intra graphs.
struct MembershipDegree {
    node_id node = 0;
    community_id community = 0;
    std::uint64_t internal_degree = 0;
};

IntraGraphs build_intra_graphs(const std::vector<MembershipDegree>& memberships,
                               const CommunitySizes& sizes, const LfrParams& params,
                               std::uint64_t seed);

struct MergeResult {
    EdgeList edges;
    std::uint64_t duplicate_candidates = 0;
    std::uint64_t rewire_rounds = 0;
    std::uint64_t dropped_duplicates = 0;
};

/// Merges the per-community graphs. Identical edges produced by different
/// communities are rewired by swaps whose partners are uniform within the
/// same community; on slow convergence a small fraction (1e-3) of edges may
/// be dropped instead. The output is simple.
MergeResult community_rewire_and_merge(std::vector<EdgeList> intra,
                                       const std::vector<MembershipDegree>& memberships,
                                       std::uint64_t seed);

struct LfrAudit {
    std::uint64_t dropped_half_edges_global = 0;
    std::uint64_t dropped_half_edges_intra = 0;
    std::uint64_t global_rewire_rounds = 0;
    std::uint64_t dropped_forbidden_edges = 0;
    std::uint64_t duplicate_candidates = 0;
    std::uint64_t community_rewire_rounds = 0;
    std::uint64_t dropped_duplicate_edges = 0;

    std::string to_json_line() const;
};

struct LfrGraph {
    EdgeList edges; ///< final graph, 0-based, simple, sorted
    CommunityAssignment ground_truth;
    std::vector<std::uint64_t> degree;          ///< realized
    std::vector<std::uint64_t> external_degree; ///< realized
    std::vector<std::uint64_t> internal_degree; ///< realized
    LfrAudit audit;
};

LfrGraph build_lfr(const LfrParams& params, std::uint64_t seed);

} // namespace lfrgen
