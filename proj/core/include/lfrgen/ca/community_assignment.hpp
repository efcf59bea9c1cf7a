#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lfrgen/graph.hpp"
#include "lfrgen/random/rng.hpp"

namespace lfrgen {

/// Free slots per community, non-increasing.
using CommunitySizes = std::vector<std::uint64_t>;

/// One node-community membership.
struct Membership {
    node_id node = 0;           ///< 0-based
    community_id community = 0; ///< 0-based

    friend constexpr auto operator<=>(const Membership&, const Membership&) = default;
};

/// Surjective node -> community multi-map plus the requested sizes.
struct CommunityAssignment {
    std::vector<Membership> memberships; ///< sorted by (node, community)
    CommunitySizes sizes;
};

/// Complete binary tree for proportional sampling: each leaf holds a
/// community's free-slot count, each inner node the weight of its left
/// subtree. Sampling restricted to [0, W) only ever reaches the leaf prefix
/// whose cumulative weight is W.
class CommunityWeightTree {
public:
    explicit CommunityWeightTree(std::span<const std::uint64_t> weights);

    std::uint64_t total_weight() const noexcept { return total_; }
    std::size_t leaf_count() const noexcept { return leaves_; }

    /// Cumulative weight of the first `count` leaves.
    std::uint64_t prefix_weight(std::size_t count) const;

    std::uint64_t leaf_weight(std::size_t leaf) const;

    /// Leaf index with probability weight/W among the prefix covered by W.
    std::size_t sample(Rng& rng, std::uint64_t limit_weight) const;

    void decrement(std::size_t leaf);

private:
    std::size_t leaves_ = 0;
    std::size_t base_ = 1; // leaves padded to a power of two
    std::vector<std::uint64_t> left_weight_;
    std::vector<std::uint64_t> leaf_weight_;
    std::uint64_t total_ = 0;
};

/// Samples from the prefix [0, W) and decrements the chosen leaf.
/// W = 0 means no feasible community and raises LasVegasFailure.
community_id tree_sample_and_decrement(CommunityWeightTree& tree,
                                       std::uint64_t limit_weight, Rng& rng);

/// p_v = max{xi | s_xi > d_in_v} (count of feasible communities) and the
/// initial feasible weight W_v = sum of the first p_v sizes, computed in
/// one parallel scan over the two non-increasing sequences.
struct FeasiblePrefix {
    std::vector<std::uint64_t> p; ///< per node, 1-based count
    std::vector<std::uint64_t> w; ///< per node, prefix weight through p_v
};
FeasiblePrefix compute_pv(const CommunitySizes& sizes,
                          std::span<const std::uint64_t> internal_degrees);

struct AssignPolicy {
    std::uint64_t resample_limit = 50;  ///< draws per membership before repair
    std::uint64_t repair_attempts = 1000;
    std::uint64_t endgame_factor = 4;   ///< pool = min(total, factor * C * nu)
};

/// Assigns every node v to nu[v] distinct communities such that community
/// xi receives exactly sizes[xi] memberships (R1) and every membership
/// satisfies sizes[chi(v)] > internal_degrees[v] (R2).
///
/// internal_degrees must be non-increasing (aligned with the sizes'
/// monotonicity); this is validated, not repaired. Near the end of the
/// process failed draws fall back to swapping with earlier assignments from
/// the endgame pool; exhausting the retry budget raises LasVegasFailure.
CommunityAssignment assign_communities(const CommunitySizes& sizes,
                                       std::span<const std::uint64_t> internal_degrees,
                                       std::span<const std::uint64_t> nu, Rng& rng,
                                       AssignPolicy policy = {});
CommunityAssignment assign_communities(const CommunitySizes& sizes,
                                       std::span<const std::uint64_t> internal_degrees,
                                       std::span<const std::uint64_t> nu,
                                       std::uint64_t seed, AssignPolicy policy = {});

/// Removes duplicate (node, community) pairs by swapping the communities of
/// two memberships (which preserves R1 exactly); candidate partners are
/// drawn uniformly. Throws LasVegasFailure when the retry budget runs out.
void repair_duplicate_memberships(CommunityAssignment& assignment,
                                  std::span<const std::uint64_t> internal_degrees,
                                  Rng& rng, std::uint64_t attempts_per_duplicate = 1000);

/// R1: every community holds exactly its requested size.
bool satisfies_r1(const CommunityAssignment& assignment);

/// R2: s_chi(v) > d_in_v for every membership, no duplicates.
bool satisfies_r2(const CommunityAssignment& assignment,
                  std::span<const std::uint64_t> internal_degrees);

} // namespace lfrgen
