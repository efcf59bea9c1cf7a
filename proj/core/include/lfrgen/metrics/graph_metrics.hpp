#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lfrgen/ca/community_assignment.hpp"
#include "lfrgen/graph.hpp"

namespace lfrgen {

/// Number of unordered node triples with all three edges present.
/// Expects a simple sorted edge list (0-based node ids).
std::uint64_t triangle_count(const EdgeList& edges);

/// Triangles incident to each node; index = node id.
std::vector<std::uint64_t> per_node_triangles(const EdgeList& edges, node_id n);

/// Pearson correlation of endpoint degrees over the 2m ordered edge
/// orientations. Undefined (nullopt) when the degree variance vanishes,
/// e.g. for regular graphs.
std::optional<double> degree_assortativity(const EdgeList& edges);

/// Mean over all n nodes of (triangles at v) / (deg_v choose 2);
/// nodes of degree < 2 contribute 0.
double avg_local_clustering(const EdgeList& edges, node_id n);

/// Fraction of each node's neighbors that share no community with it.
/// Isolated nodes have no defined mixing and are excluded from the mean.
struct MixingReport {
    std::vector<double> per_node; ///< NaN for isolated nodes
    double mean = 0;
    std::uint64_t counted_nodes = 0;
};
MixingReport realized_mixing(const EdgeList& edges, const CommunityAssignment& truth,
                             node_id n);

} // namespace lfrgen
