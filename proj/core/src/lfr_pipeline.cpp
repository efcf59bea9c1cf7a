#include "lfrgen/lfr/pipeline.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <unordered_map>

#include <json.hpp>

#include "lfrgen/cm/configuration_model.hpp"
#include "lfrgen/es/edge_switch.hpp"
#include "lfrgen/hh/havel_hakimi.hpp"
#include "lfrgen/random/powerlaw.hpp"
#include "lfrgen/random/shuffle.hpp"

namespace lfrgen {

void LfrParams::validate() const {
    if (n < 1)
        throw ValidationError("n must be positive");
    if (degree_min < 1 || degree_max < degree_min)
        throw ValidationError("degree bounds must satisfy 1 <= dmin <= dmax");
    if (degree_max >= n)
        throw ValidationError("dmax must be smaller than n");
    if (!(mixing > 0.0) || !(mixing < 1.0))
        throw ValidationError("mixing parameter must lie strictly between 0 and 1");
    if (overlap_nodes > n)
        throw ValidationError("overlapping node count must not exceed n");
    if (memberships < 1)
        throw ValidationError("memberships must be >= 1");
    if (community_min < 1 || community_max < community_min)
        throw ValidationError("community size bounds must satisfy 1 <= smin <= smax");
    if (swaps_factor < 0 || cm_swaps_factor < 0)
        throw ValidationError("swap factors must be non-negative");
}

NodePlan sample_node_plan(const LfrParams& params, std::uint64_t seed) {
    params.validate();
    NodePlan plan;

    {
        Rng rng = Rng::from(seed, "degrees");
        PldParams pld{params.degree_min, params.degree_max + 1, params.degree_exponent};
        plan.degrees = sample_monotonic_pld(params.n, pld, rng);
    }

    plan.nu.assign(params.n, 1);
    if (params.overlap_nodes > 0 && params.memberships > 1) {
        Rng rng = Rng::from(seed, "overlap");
        const auto perm = random_permutation(params.n, rng);
        for (std::uint64_t i = 0; i < params.overlap_nodes; ++i)
            plan.nu[perm[i]] = params.memberships;
    } else if (params.overlap_nodes > 0) {
        // nu == 1 makes the overlap set vacuous; all nodes keep one slot.
    }

    Rng rng = Rng::from(seed, "degree-split");
    plan.external_degree.resize(params.n);
    plan.internal_degree.resize(params.n);
    plan.membership_degrees.resize(params.n);
    for (std::uint64_t v = 0; v < params.n; ++v) {
        const auto d = plan.degrees[v];
        const auto ext = randomized_round(params.mixing * static_cast<double>(d), rng);
        plan.external_degree[v] = ext;
        plan.internal_degree[v] = d - ext;
        plan.membership_degrees[v] = even_split(d - ext, plan.nu[v], rng);
    }
    return plan;
}

CommunitySizesSample sample_community_sizes(const LfrParams& params, std::uint64_t total,
                                            std::uint64_t seed) {
    if (total < params.community_min)
        throw ValidationError("total memberships below the minimum community size");

    Rng rng = Rng::from(seed, "community-sizes");
    PldDistribution dist(
        PldParams{params.community_min, params.community_max + 1, params.community_exponent});

    std::vector<std::uint64_t> sizes;
    std::vector<char> adjusted_flag;
    std::uint64_t sum = 0;
    while (sum < total) {
        const auto s = dist.sample(rng);
        sizes.push_back(s);
        adjusted_flag.push_back(0);
        sum += s;
    }

    std::uint64_t overshoot = sum - total;
    if (overshoot > 0) {
        auto largest = std::max_element(sizes.begin(), sizes.end());
        if (*largest >= params.community_min + overshoot) {
            *largest -= overshoot;
            adjusted_flag[largest - sizes.begin()] = 1;
            overshoot = 0;
        } else {
            // Round-robin unit decrements over communities above the minimum.
            bool progress = true;
            while (overshoot > 0 && progress) {
                progress = false;
                for (std::size_t i = 0; i < sizes.size() && overshoot > 0; ++i) {
                    if (sizes[i] > params.community_min) {
                        sizes[i] -= 1;
                        adjusted_flag[i] = 1;
                        --overshoot;
                        progress = true;
                    }
                }
            }
            if (overshoot > 0) {
                // Not enough slack: replace the last community by the exact
                // gap if that is a legal size.
                const auto last = sizes.back();
                sum = 0;
                for (auto s : sizes)
                    sum += s;
                const auto gap = total - (sum - last);
                if (gap >= params.community_min && gap <= params.community_max) {
                    sizes.back() = gap;
                    adjusted_flag.back() = 1;
                    overshoot = 0;
                } else {
                    throw ValidationError(
                        "community size constraints cannot realize the requested total");
                }
            }
        }
    }

    // Sort non-increasing, keeping track of which entries were adjusted.
    std::vector<std::size_t> order(sizes.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return sizes[a] > sizes[b];
    });

    CommunitySizesSample out;
    out.sizes.reserve(sizes.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        out.sizes.push_back(sizes[order[rank]]);
        if (adjusted_flag[order[rank]])
            out.adjusted.push_back(rank);
    }
    return out;
}

namespace {

std::vector<std::vector<community_id>> communities_by_node(
    const CommunityAssignment& truth, std::uint64_t n) {
    std::vector<std::vector<community_id>> out(n);
    for (const auto& m : truth.memberships)
        out.at(m.node).push_back(m.community);
    for (auto& cs : out)
        std::sort(cs.begin(), cs.end());
    return out;
}

bool share_community(const std::vector<community_id>& a,
                     const std::vector<community_id>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (b[j] < a[i])
            ++j;
        else
            return true;
    }
    return false;
}

/// Forbidden-edge detection via the two-scan annotation: items are joined
/// with the membership list once sorted by source and once by target node.
std::vector<edge_id> find_forbidden(std::vector<std::pair<edge_id, Edge>> items,
                                    const CommunityAssignment& truth) {
    std::vector<std::vector<community_id>> cu(items.size());

    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.second.u < b.second.u; });
    {
        std::size_t p = 0;
        const auto& ms = truth.memberships; // sorted by (node, community)
        for (std::size_t i = 0; i < items.size(); ++i) {
            const auto u = items[i].second.u;
            while (p < ms.size() && ms[p].node < u)
                ++p;
            for (auto q = p; q < ms.size() && ms[q].node == u; ++q)
                cu[i].push_back(ms[q].community);
        }
    }

    std::vector<std::size_t> order(items.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return items[a].second.v < items[b].second.v;
    });

    std::vector<edge_id> forbidden;
    {
        std::size_t p = 0;
        const auto& ms = truth.memberships;
        std::vector<community_id> cv;
        for (const auto idx : order) {
            const auto v = items[idx].second.v;
            while (p < ms.size() && ms[p].node < v)
                ++p;
            cv.clear();
            for (auto q = p; q < ms.size() && ms[q].node == v; ++q)
                cv.push_back(ms[q].community);
            if (share_community(cu[idx], cv))
                forbidden.push_back(items[idx].first);
        }
    }
    std::sort(forbidden.begin(), forbidden.end());
    return forbidden;
}

/// Realize + randomize a (possibly non-graphical) degree sequence given in
/// ascending order; emits 1-based local node ids.
EdgeList sample_local_graph(const DegreeSequence& ascending_degrees,
                            const LfrParams& params, Rng& rng, bool sequential_switcher,
                            std::uint64_t* dropped_half_edges) {
    EdgeList edges;
    if (params.sampler == LfrParams::Sampler::fdsm_hh) {
        auto hh = hh_edges(ascending_degrees);
        if (dropped_half_edges)
            *dropped_half_edges += hh.unmet;
        edges = std::move(hh.edges);
        const auto k = static_cast<std::uint64_t>(
            std::llround(params.swaps_factor * static_cast<double>(edges.size())));
        if (edges.size() >= 2 && k > 0) {
            const auto swaps = draw_random_swaps(edges.size(), k, rng);
            edges = sequential_switcher ? apply_swaps_sequential(std::move(edges), swaps)
                                        : apply_swaps(std::move(edges), swaps);
        }
    } else {
        const auto realized = hh_realized_degrees(ascending_degrees);
        if (dropped_half_edges) {
            for (std::size_t i = 0; i < realized.size(); ++i)
                *dropped_half_edges += ascending_degrees[i] - realized[i];
        }
        DegreeSequence positive = realized; // zero entries shed no half-edges
        auto multi = cm_sample(positive, rng);
        edges = rewire_to_simple(std::move(multi), rng,
                                 RewirePolicy{params.rewire_round_limit, true})
                    .edges;
        const auto k = static_cast<std::uint64_t>(
            std::llround(params.cm_swaps_factor * static_cast<double>(edges.size())));
        if (edges.size() >= 2 && k > 0) {
            const auto swaps = draw_random_swaps(edges.size(), k, rng);
            edges = sequential_switcher ? apply_swaps_sequential(std::move(edges), swaps)
                                        : apply_swaps(std::move(edges), swaps);
        }
    }
    return edges;
}

} // namespace

GlobalGraphResult build_global_graph(const std::vector<std::uint64_t>& external_degree,
                                     const CommunityAssignment& ground_truth,
                                     const LfrParams& params, std::uint64_t seed) {
    GlobalGraphResult result;
    Rng rng = Rng::from(seed, "global-graph");

    // Nodes ordered by external degree; zero-degree nodes take no part.
    std::vector<node_id> order;
    order.reserve(external_degree.size());
    for (node_id v = 0; v < external_degree.size(); ++v)
        if (external_degree[v] > 0)
            order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](node_id a, node_id b) {
        return external_degree[a] < external_degree[b];
    });

    DegreeSequence local(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        local[i] = external_degree[order[i]];

    EdgeList edges;
    if (!order.empty()) {
        edges = sample_local_graph(local, params, rng, false, &result.dropped_half_edges);
        for (auto& e : edges)
            e = Edge{order[e.u - 1], order[e.v - 1]}.normalized();
        std::sort(edges.begin(), edges.end());
    }

    // Iterative rewiring: swap every edge between co-members with a random
    // partner; only edges touched by the previous round need re-checking.
    std::vector<std::pair<edge_id, Edge>> candidates;
    candidates.reserve(edges.size());
    for (edge_id i = 0; i < edges.size(); ++i)
        candidates.emplace_back(i, edges[i]);

    for (;;) {
        auto forbidden = find_forbidden(std::move(candidates), ground_truth);
        candidates.clear();
        if (forbidden.empty())
            break;
        if (result.rewire_rounds >= params.rewire_round_limit || edges.size() < 2) {
            // Endgame: discard the few remaining invalid edges.
            for (auto it = forbidden.rbegin(); it != forbidden.rend(); ++it)
                edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(*it));
            result.dropped_forbidden += forbidden.size();
            break;
        }

        std::vector<SwapDescriptor> swaps;
        swaps.reserve(forbidden.size());
        for (const auto id : forbidden) {
            auto partner = rng.below(edges.size());
            while (partner == id)
                partner = rng.below(edges.size());
            swaps.push_back(SwapDescriptor{id, partner, rng.coin()});
        }

        std::vector<Edge> touched;
        edges = apply_swaps(std::move(edges), swaps, RunConfig{}, nullptr, &touched);
        result.rewire_rounds += 1;

        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (const auto& value : touched) {
            const auto it = std::lower_bound(edges.begin(), edges.end(), value);
            if (it != edges.end() && *it == value)
                candidates.emplace_back(static_cast<edge_id>(it - edges.begin()), value);
        }
    }

    result.edges = std::move(edges);
    return result;
}

IntraGraphs build_intra_graphs(const std::vector<MembershipDegree>& memberships,
                               const CommunitySizes& sizes, const LfrParams& params,
                               std::uint64_t seed) {
    IntraGraphs out;
    out.by_community.resize(sizes.size());

    std::vector<std::vector<MembershipDegree>> members(sizes.size());
    for (const auto& m : memberships)
        members.at(m.community).push_back(m);

    for (community_id c = 0; c < sizes.size(); ++c) {
        auto& nodes = members[c];
        assert(nodes.size() == sizes[c]);
        std::stable_sort(nodes.begin(), nodes.end(),
                         [](const MembershipDegree& a, const MembershipDegree& b) {
                             if (a.internal_degree != b.internal_degree)
                                 return a.internal_degree < b.internal_degree;
                             return a.node < b.node;
                         });

        std::vector<node_id> order;
        DegreeSequence local;
        for (const auto& m : nodes) {
            if (m.internal_degree == 0)
                continue;
            order.push_back(m.node);
            local.push_back(m.internal_degree);
        }
        if (local.empty())
            continue;

        Rng rng = Rng::from(seed, "intra-community", c);
        const bool sequential = sizes[c] <= params.intra_sequential_threshold;
        auto edges =
            sample_local_graph(local, params, rng, sequential, &out.dropped_half_edges);
        for (auto& e : edges)
            e = Edge{order[e.u - 1], order[e.v - 1]}.normalized();
        std::sort(edges.begin(), edges.end());
        out.by_community[c] = std::move(edges);
    }
    return out;
}

MergeResult community_rewire_and_merge(std::vector<EdgeList> intra,
                                       const std::vector<MembershipDegree>& memberships,
                                       std::uint64_t seed) {
    (void)memberships;
    MergeResult result;
    Rng rng = Rng::from(seed, "community-rewire");

    struct EdgeHash {
        std::size_t operator()(const Edge& e) const noexcept {
            std::uint64_t h = e.u * 0x9E3779B97F4A7C15ull;
            h ^= e.v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
            return static_cast<std::size_t>(h);
        }
    };
    std::unordered_map<Edge, std::uint64_t, EdgeHash> counts;
    std::uint64_t total_edges = 0;
    for (const auto& community : intra)
        for (const auto& e : community) {
            counts[e] += 1;
            ++total_edges;
        }

    const std::uint64_t drop_budget =
        std::max<std::uint64_t>(1, total_edges / 1000);
    std::uint64_t dropped = 0;

    // Candidate duplicates: (community, index) of all but one instance of
    // every value held by more than one community.
    const auto collect_candidates = [&]() {
        std::vector<std::pair<community_id, std::size_t>> cands;
        std::unordered_map<Edge, std::uint64_t, EdgeHash> seen;
        for (community_id c = 0; c < intra.size(); ++c)
            for (std::size_t i = 0; i < intra[c].size(); ++i) {
                const auto& e = intra[c][i];
                if (counts[e] > 1 && ++seen[e] > 1)
                    cands.emplace_back(c, i);
            }
        return cands;
    };

    auto candidates = collect_candidates();
    result.duplicate_candidates = candidates.size();

    std::uint64_t stagnant_rounds = 0;
    std::size_t last_count = candidates.size();
    const std::uint64_t round_limit = 64;

    while (!candidates.empty()) {
        if (result.rewire_rounds >= round_limit ||
            (stagnant_rounds >= 3 && dropped < drop_budget)) {
            // Slow convergence: drop one instance of each remaining
            // duplicate, bounded by the 1e-3 budget (forced at the limit).
            std::sort(candidates.rbegin(), candidates.rend());
            for (const auto& [c, i] : candidates) {
                if (result.rewire_rounds < round_limit && dropped >= drop_budget)
                    break;
                counts[intra[c][i]] -= 1;
                intra[c].erase(intra[c].begin() + static_cast<std::ptrdiff_t>(i));
                ++dropped;
            }
            result.dropped_duplicates = dropped;
            stagnant_rounds = 0;
            candidates = collect_candidates();
            if (result.rewire_rounds >= round_limit)
                break;
            continue;
        }

        for (const auto& [c, idx] : candidates) {
            auto& community = intra[c];
            if (community.size() < 2)
                continue;
            if (counts[community[idx]] < 2)
                continue; // an earlier swap of this round already fixed it
            auto partner = rng.below(community.size());
            while (partner == idx)
                partner = rng.below(community.size());
            const Edge x = community[idx];
            const Edge y = community[partner];
            const auto [xs, ys] = swapped_edges(x, y, rng.coin());
            const auto elsewhere = [&](const Edge& t) {
                auto it = counts.find(t);
                std::uint64_t cnt = it == counts.end() ? 0 : it->second;
                cnt -= (x == t) ? 1 : 0;
                cnt -= (y == t) ? 1 : 0;
                return cnt;
            };
            if (xs.is_loop() || ys.is_loop() || xs == ys || elsewhere(xs) > 0 ||
                elsewhere(ys) > 0)
                continue;
            if (--counts[x] == 0)
                counts.erase(x);
            if (--counts[y] == 0)
                counts.erase(y);
            counts[xs] += 1;
            counts[ys] += 1;
            community[idx] = xs;
            community[partner] = ys;
        }
        result.rewire_rounds += 1;

        candidates = collect_candidates();
        if (candidates.size() >= last_count)
            ++stagnant_rounds;
        else
            stagnant_rounds = 0;
        last_count = candidates.size();
    }
    result.dropped_duplicates = dropped;

    for (auto& community : intra)
        result.edges.insert(result.edges.end(), community.begin(), community.end());
    std::sort(result.edges.begin(), result.edges.end());
    return result;
}

std::string LfrAudit::to_json_line() const {
    nlohmann::json j{{"dropped_half_edges_global", dropped_half_edges_global},
                     {"dropped_half_edges_intra", dropped_half_edges_intra},
                     {"global_rewire_rounds", global_rewire_rounds},
                     {"dropped_forbidden_edges", dropped_forbidden_edges},
                     {"duplicate_candidates", duplicate_candidates},
                     {"community_rewire_rounds", community_rewire_rounds},
                     {"dropped_duplicate_edges", dropped_duplicate_edges}};
    return j.dump();
}

LfrGraph build_lfr(const LfrParams& params, std::uint64_t seed) {
    params.validate();
    const auto plan = sample_node_plan(params, seed);

    std::uint64_t total_memberships = 0;
    for (auto v : plan.nu)
        total_memberships += v;
    const auto sizes_sample = sample_community_sizes(params, total_memberships, seed);
    const auto& sizes = sizes_sample.sizes;

    // Nodes enter the assignment ordered by their largest per-membership
    // internal degree, matching the monotonicity the sampler requires.
    std::vector<std::uint64_t> assign_degree(params.n);
    for (std::uint64_t v = 0; v < params.n; ++v)
        assign_degree[v] =
            *std::max_element(plan.membership_degrees[v].begin(),
                              plan.membership_degrees[v].end());
    std::vector<node_id> order(params.n);
    for (std::uint64_t v = 0; v < params.n; ++v)
        order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](node_id a, node_id b) {
        return assign_degree[a] > assign_degree[b];
    });

    std::vector<std::uint64_t> sorted_degree(params.n), sorted_nu(params.n);
    for (std::uint64_t i = 0; i < params.n; ++i) {
        sorted_degree[i] = assign_degree[order[i]];
        sorted_nu[i] = plan.nu[order[i]];
    }

    Rng assign_rng = Rng::from(seed, "community-assignment");
    auto assignment =
        assign_communities(sizes, sorted_degree, sorted_nu, assign_rng);
    for (auto& m : assignment.memberships)
        m.node = order[m.node];
    std::sort(assignment.memberships.begin(), assignment.memberships.end());

    // Pair each node's communities (largest first) with its membership
    // degrees (largest first); R2 holds for any pairing, this one is fixed.
    std::vector<MembershipDegree> membership_degrees;
    membership_degrees.reserve(assignment.memberships.size());
    {
        std::size_t i = 0;
        const auto& ms = assignment.memberships;
        while (i < ms.size()) {
            auto j = i;
            while (j < ms.size() && ms[j].node == ms[i].node)
                ++j;
            const auto v = ms[i].node;
            std::vector<community_id> cs;
            for (auto k = i; k < j; ++k)
                cs.push_back(ms[k].community);
            std::sort(cs.begin(), cs.end(), [&](community_id a, community_id b) {
                if (sizes[a] != sizes[b])
                    return sizes[a] > sizes[b];
                return a < b;
            });
            auto splits = plan.membership_degrees[v];
            std::sort(splits.rbegin(), splits.rend());
            assert(cs.size() == splits.size());
            for (std::size_t k = 0; k < cs.size(); ++k)
                membership_degrees.push_back(MembershipDegree{v, cs[k], splits[k]});
            i = j;
        }
    }

    LfrGraph graph;
    graph.ground_truth = std::move(assignment);

    auto global =
        build_global_graph(plan.external_degree, graph.ground_truth, params, seed);
    auto intra = build_intra_graphs(membership_degrees, sizes, params, seed);
    auto merged = community_rewire_and_merge(std::move(intra.by_community),
                                             membership_degrees, seed);

    graph.audit.dropped_half_edges_global = global.dropped_half_edges;
    graph.audit.dropped_half_edges_intra = intra.dropped_half_edges;
    graph.audit.global_rewire_rounds = global.rewire_rounds;
    graph.audit.dropped_forbidden_edges = global.dropped_forbidden;
    graph.audit.duplicate_candidates = merged.duplicate_candidates;
    graph.audit.community_rewire_rounds = merged.rewire_rounds;
    graph.audit.dropped_duplicate_edges = merged.dropped_duplicates;

    // The global part has no co-member edge, intra edges always join
    // co-members, so the union is disjoint and stays simple.
    graph.edges.reserve(global.edges.size() + merged.edges.size());
    std::merge(global.edges.begin(), global.edges.end(), merged.edges.begin(),
               merged.edges.end(), std::back_inserter(graph.edges));

    const auto communities = communities_by_node(graph.ground_truth, params.n);
    graph.degree.assign(params.n, 0);
    graph.external_degree.assign(params.n, 0);
    graph.internal_degree.assign(params.n, 0);
    for (const auto& e : graph.edges) {
        graph.degree[e.u] += 1;
        graph.degree[e.v] += 1;
        if (share_community(communities[e.u], communities[e.v])) {
            graph.internal_degree[e.u] += 1;
            graph.internal_degree[e.v] += 1;
        } else {
            graph.external_degree[e.u] += 1;
            graph.external_degree[e.v] += 1;
        }
    }
    return graph;
}

} // namespace lfrgen
