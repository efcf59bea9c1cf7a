#include "lfrgen/metrics/graph_metrics.hpp"

#include <algorithm>
#include <cmath>

namespace lfrgen {

namespace {

// Forward adjacency: each edge stored once at its lower-ranked endpoint
// (rank = (degree, id)), which bounds the per-node list by O(sqrt(m)).
struct ForwardAdjacency {
    std::vector<std::vector<node_id>> fwd;
    std::vector<std::uint64_t> degree;

    ForwardAdjacency(const EdgeList& edges, node_id n) {
        degree = degrees_of(edges, n);
        fwd.resize(n);
        auto rank_less = [&](node_id a, node_id b) {
            if (degree[a] != degree[b])
                return degree[a] < degree[b];
            return a < b;
        };
        for (const auto& e : edges) {
            if (rank_less(e.u, e.v))
                fwd[e.u].push_back(e.v);
            else
                fwd[e.v].push_back(e.u);
        }
        for (auto& list : fwd)
            std::sort(list.begin(), list.end());
    }
};

} // namespace

std::vector<std::uint64_t> per_node_triangles(const EdgeList& edges, node_id n) {
    if (!is_simple_edge_list(edges))
        throw ValidationError("triangle counting expects a simple sorted edge list");
    ForwardAdjacency adj(edges, n);
    std::vector<std::uint64_t> tri(n, 0);
    for (node_id u = 0; u < n; ++u) {
        const auto& nu = adj.fwd[u];
        for (std::size_t i = 0; i < nu.size(); ++i) {
            const auto v = nu[i];
            const auto& nv = adj.fwd[v];
            // intersect fwd[u] and fwd[v]
            std::size_t a = 0, b = 0;
            while (a < nu.size() && b < nv.size()) {
                if (nu[a] < nv[b])
                    ++a;
                else if (nv[b] < nu[a])
                    ++b;
                else {
                    tri[u] += 1;
                    tri[v] += 1;
                    tri[nu[a]] += 1;
                    ++a;
                    ++b;
                }
            }
        }
    }
    // Each triangle {u,v,w} is found exactly once (via its two forward
    // edges from the lowest-ranked vertex), incrementing all three nodes.
    return tri;
}

std::uint64_t triangle_count(const EdgeList& edges) {
    const auto n = node_count(edges);
    const auto tri = per_node_triangles(edges, n);
    std::uint64_t total = 0;
    for (auto t : tri)
        total += t;
    return total / 3;
}

std::optional<double> degree_assortativity(const EdgeList& edges) {
    if (edges.size() < 2)
        return std::nullopt;
    const auto n = node_count(edges);
    const auto deg = degrees_of(edges, n);

    // Over both orientations the two endpoint samples have identical
    // marginals, so a single pass accumulates all Pearson terms.
    double sum_x = 0, sum_x2 = 0, sum_xy = 0;
    for (const auto& e : edges) {
        const double du = static_cast<double>(deg[e.u]);
        const double dv = static_cast<double>(deg[e.v]);
        sum_x += du + dv;
        sum_x2 += du * du + dv * dv;
        sum_xy += 2.0 * du * dv;
    }
    const double inv = 1.0 / (2.0 * static_cast<double>(edges.size()));
    const double mean = sum_x * inv;
    const double var = sum_x2 * inv - mean * mean;
    const double cov = sum_xy * inv - mean * mean;
    if (!(var > 1e-12))
        return std::nullopt;
    return cov / var;
}

double avg_local_clustering(const EdgeList& edges, node_id n) {
    if (n == 0)
        return 0.0;
    const auto tri = per_node_triangles(edges, n);
    const auto deg = degrees_of(edges, n);
    double sum = 0;
    for (node_id v = 0; v < n; ++v) {
        if (deg[v] < 2)
            continue;
        const double pairs = 0.5 * static_cast<double>(deg[v]) *
                             static_cast<double>(deg[v] - 1);
        sum += static_cast<double>(tri[v]) / pairs;
    }
    return sum / static_cast<double>(n);
}

MixingReport realized_mixing(const EdgeList& edges, const CommunityAssignment& truth,
                             node_id n) {
    std::vector<std::vector<community_id>> communities(n);
    for (const auto& m : truth.memberships) {
        if (m.node >= n)
            throw ValidationError("ground truth references an unknown node");
        communities[m.node].push_back(m.community);
    }

    const auto share_community = [&](node_id a, node_id b) {
        for (const auto c : communities[a])
            for (const auto d : communities[b])
                if (c == d)
                    return true;
        return false;
    };

    std::vector<std::uint64_t> deg(n, 0), external(n, 0);
    for (const auto& e : edges) {
        deg[e.u] += 1;
        deg[e.v] += 1;
        if (!share_community(e.u, e.v)) {
            external[e.u] += 1;
            external[e.v] += 1;
        }
    }

    MixingReport report;
    report.per_node.assign(n, std::nan(""));
    double sum = 0;
    for (node_id v = 0; v < n; ++v) {
        if (deg[v] == 0)
            continue;
        const double mu =
            static_cast<double>(external[v]) / static_cast<double>(deg[v]);
        report.per_node[v] = mu;
        sum += mu;
        report.counted_nodes += 1;
    }
    report.mean = report.counted_nodes ? sum / static_cast<double>(report.counted_nodes) : 0.0;
    return report;
}

} // namespace lfrgen
