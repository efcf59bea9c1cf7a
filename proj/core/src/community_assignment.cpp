#include "lfrgen/ca/community_assignment.hpp"

#include <algorithm>
#include <unordered_set>

namespace lfrgen {

CommunityWeightTree::CommunityWeightTree(std::span<const std::uint64_t> weights) {
    leaves_ = weights.size();
    base_ = 1;
    while (base_ < leaves_)
        base_ <<= 1;
    left_weight_.assign(base_, 0);
    leaf_weight_.assign(base_, 0);
    for (std::size_t i = 0; i < leaves_; ++i) {
        leaf_weight_[i] = weights[i];
        total_ += weights[i];
    }
    // Node k has children 2k and 2k+1; leaves live at base_ + i. Subtree
    // totals are built bottom-up, inner nodes keep their left child's total.
    std::vector<std::uint64_t> subtree(2 * base_, 0);
    for (std::size_t i = 0; i < leaves_; ++i)
        subtree[base_ + i] = leaf_weight_[i];
    for (std::size_t k = base_ - 1; k >= 1; --k)
        subtree[k] = subtree[2 * k] + subtree[2 * k + 1];
    for (std::size_t k = 1; k < base_; ++k)
        left_weight_[k] = subtree[2 * k];
}

std::uint64_t CommunityWeightTree::prefix_weight(std::size_t count) const {
    if (count > leaves_)
        throw ValidationError("prefix_weight beyond the leaf count");
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < count; ++i)
        sum += leaf_weight_[i];
    return sum;
}

std::uint64_t CommunityWeightTree::leaf_weight(std::size_t leaf) const {
    if (leaf >= leaves_)
        throw ValidationError("leaf index out of range");
    return leaf_weight_[leaf];
}

std::size_t CommunityWeightTree::sample(Rng& rng, std::uint64_t limit_weight) const {
    if (limit_weight == 0 || limit_weight > total_)
        throw ValidationError("sampling weight must lie in (0, total]");
    std::uint64_t y = rng.below(limit_weight);
    std::size_t node = 1;
    while (node < base_) {
        if (y < left_weight_[node]) {
            node = 2 * node;
        } else {
            y -= left_weight_[node];
            node = 2 * node + 1;
        }
    }
    return node - base_;
}

void CommunityWeightTree::decrement(std::size_t leaf) {
    if (leaf >= leaves_ || leaf_weight_[leaf] == 0)
        throw ValidationError("cannot decrement an empty community");
    leaf_weight_[leaf] -= 1;
    total_ -= 1;
    std::size_t node = base_ + leaf;
    while (node > 1) {
        const auto parent = node / 2;
        if (node == 2 * parent) // left child
            left_weight_[parent] -= 1;
        node = parent;
    }
}

community_id tree_sample_and_decrement(CommunityWeightTree& tree,
                                       std::uint64_t limit_weight, Rng& rng) {
    if (limit_weight == 0)
        throw LasVegasFailure("no feasible community remains", 1);
    const auto leaf = tree.sample(rng, limit_weight);
    tree.decrement(leaf);
    return leaf;
}

FeasiblePrefix compute_pv(const CommunitySizes& sizes,
                          std::span<const std::uint64_t> internal_degrees) {
    if (sizes.empty())
        throw ValidationError("community sizes must not be empty");
    if (!std::is_sorted(sizes.rbegin(), sizes.rend()))
        throw ValidationError("community sizes must be non-increasing");
    for (std::size_t i = 1; i < internal_degrees.size(); ++i)
        if (internal_degrees[i] > internal_degrees[i - 1])
            throw ValidationError("internal degrees must be non-increasing");

    FeasiblePrefix out;
    out.p.resize(internal_degrees.size());
    out.w.resize(internal_degrees.size());

    // Two-pointer scan: both sequences are non-increasing, so the feasible
    // prefix only grows while walking the degrees.
    std::size_t p = 0;
    std::uint64_t w = 0;
    for (std::size_t v = 0; v < internal_degrees.size(); ++v) {
        if (internal_degrees[v] >= sizes[0])
            throw ValidationError("internal degree too large for every community");
        while (p < sizes.size() && sizes[p] > internal_degrees[v]) {
            w += sizes[p];
            ++p;
        }
        out.p[v] = p;
        out.w[v] = w;
    }
    return out;
}

namespace {

struct NodeSets {
    // Per-node chosen communities; nu is tiny, linear scans suffice.
    std::vector<std::vector<community_id>> chosen;

    bool contains(node_id v, community_id c) const {
        const auto& cs = chosen[v];
        return std::find(cs.begin(), cs.end(), c) != cs.end();
    }
};

} // namespace

CommunityAssignment assign_communities(const CommunitySizes& sizes,
                                       std::span<const std::uint64_t> internal_degrees,
                                       std::span<const std::uint64_t> nu, Rng& rng,
                                       AssignPolicy policy) {
    if (internal_degrees.size() != nu.size())
        throw ValidationError("internal degrees and membership counts must align");

    const auto prefix = compute_pv(sizes, internal_degrees);

    std::uint64_t total_memberships = 0;
    std::uint64_t max_nu = 1;
    for (std::size_t v = 0; v < nu.size(); ++v) {
        if (nu[v] < 1)
            throw ValidationError("every node needs at least one membership");
        if (nu[v] > prefix.p[v])
            throw ValidationError("more memberships requested than feasible communities");
        total_memberships += nu[v];
        max_nu = std::max(max_nu, nu[v]);
    }
    std::uint64_t total_slots = 0;
    for (auto s : sizes)
        total_slots += s;
    if (total_slots != total_memberships)
        throw ValidationError("community sizes must sum to the total memberships");

    CommunityWeightTree tree(sizes);
    CommunityAssignment assignment;
    assignment.sizes = sizes;
    assignment.memberships.reserve(static_cast<std::size_t>(total_memberships));

    NodeSets sets;
    sets.chosen.resize(nu.size());

    const std::uint64_t pool_size =
        std::min<std::uint64_t>(total_memberships,
                                policy.endgame_factor * sizes.size() * max_nu);

    std::uint64_t assigned = 0;
    for (std::size_t v = 0; v < nu.size(); ++v) {
        for (std::uint64_t k = 0; k < nu[v]; ++k) {
            const std::uint64_t limit = tree.prefix_weight(prefix.p[v]);
            bool placed = false;
            if (limit > 0) {
                for (std::uint64_t attempt = 0; attempt < policy.resample_limit;
                     ++attempt) {
                    const auto c = tree.sample(rng, limit);
                    if (sets.contains(v, c))
                        continue;
                    tree.decrement(c);
                    sets.chosen[v].push_back(c);
                    assignment.memberships.push_back(
                        Membership{static_cast<node_id>(v), c});
                    placed = true;
                    break;
                }
            }
            if (placed) {
                ++assigned;
                continue;
            }

            // Offline endgame: free slots exist only in communities already
            // chosen for v (or none in its feasible prefix). Swap with an
            // earlier assignment from the pool: the donor's community moves
            // to v and the donor draws a replacement, which keeps R1 intact.
            bool repaired = false;
            const std::uint64_t pool_begin =
                assignment.memberships.size() > pool_size
                    ? assignment.memberships.size() - pool_size
                    : 0;
            for (std::uint64_t attempt = 0;
                 attempt < policy.repair_attempts && !repaired; ++attempt) {
                if (assignment.memberships.empty())
                    break;
                const auto idx =
                    pool_begin + rng.below(assignment.memberships.size() - pool_begin);
                auto& donor = assignment.memberships[idx];
                const auto c = donor.community;
                const auto u = donor.node;
                if (u == v || c >= prefix.p[v] || sets.contains(v, c))
                    continue;
                const std::uint64_t donor_limit = tree.prefix_weight(prefix.p[u]);
                if (donor_limit == 0)
                    continue;
                const auto replacement = tree.sample(rng, donor_limit);
                if (replacement == c || sets.contains(u, replacement))
                    continue;
                // Move c from u to v, give u the replacement slot.
                tree.decrement(replacement);
                std::replace(sets.chosen[u].begin(), sets.chosen[u].end(), c,
                             static_cast<community_id>(replacement));
                donor.community = replacement;
                sets.chosen[v].push_back(c);
                assignment.memberships.push_back(
                    Membership{static_cast<node_id>(v), c});
                repaired = true;
            }
            if (!repaired)
                throw LasVegasFailure("community assignment endgame failed",
                                      total_memberships - assigned);
            ++assigned;
        }
    }

    std::sort(assignment.memberships.begin(), assignment.memberships.end());
    return assignment;
}

CommunityAssignment assign_communities(const CommunitySizes& sizes,
                                       std::span<const std::uint64_t> internal_degrees,
                                       std::span<const std::uint64_t> nu,
                                       std::uint64_t seed, AssignPolicy policy) {
    Rng rng(seed);
    return assign_communities(sizes, internal_degrees, nu, rng, policy);
}

void repair_duplicate_memberships(CommunityAssignment& assignment,
                                  std::span<const std::uint64_t> internal_degrees,
                                  Rng& rng, std::uint64_t attempts_per_duplicate) {
    auto& ms = assignment.memberships;
    std::sort(ms.begin(), ms.end());

    const auto feasible = [&](node_id v, community_id c) {
        return assignment.sizes[c] > internal_degrees[v];
    };
    const auto has_pair = [&](node_id v, community_id c) {
        return std::binary_search(ms.begin(), ms.end(), Membership{v, c});
    };

    for (std::size_t i = 1; i < ms.size(); ++i) {
        if (ms[i] != ms[i - 1])
            continue;
        // ms[i] duplicates ms[i-1]: swap its community with a random other
        // membership; community sizes are untouched by construction.
        bool fixed = false;
        for (std::uint64_t attempt = 0; attempt < attempts_per_duplicate; ++attempt) {
            const auto j = rng.below(ms.size());
            if (j == i || ms[j].node == ms[i].node)
                continue;
            const auto v = ms[i].node, u = ms[j].node;
            const auto c = ms[i].community, d = ms[j].community;
            if (c == d)
                continue;
            if (!feasible(v, d) || !feasible(u, c))
                continue;
            if (has_pair(v, d) || has_pair(u, c))
                continue;
            ms[i].community = d;
            ms[j].community = c;
            std::sort(ms.begin(), ms.end());
            fixed = true;
            break;
        }
        if (!fixed) {
            std::uint64_t dups = 0;
            for (std::size_t k = 1; k < ms.size(); ++k)
                dups += ms[k] == ms[k - 1] ? 1 : 0;
            throw LasVegasFailure("duplicate membership cannot be rewired", dups);
        }
        i = 0; // list was re-sorted, restart the duplicate scan
    }
}

bool satisfies_r1(const CommunityAssignment& assignment) {
    std::vector<std::uint64_t> counts(assignment.sizes.size(), 0);
    for (const auto& m : assignment.memberships) {
        if (m.community >= counts.size())
            return false;
        counts[m.community] += 1;
    }
    return std::equal(counts.begin(), counts.end(), assignment.sizes.begin(),
                      assignment.sizes.end());
}

bool satisfies_r2(const CommunityAssignment& assignment,
                  std::span<const std::uint64_t> internal_degrees) {
    for (std::size_t i = 0; i < assignment.memberships.size(); ++i) {
        const auto& m = assignment.memberships[i];
        if (m.node >= internal_degrees.size())
            return false;
        if (assignment.sizes[m.community] <= internal_degrees[m.node])
            return false;
        if (i > 0 && m == assignment.memberships[i - 1])
            return false;
    }
    return true;
}

} // namespace lfrgen
