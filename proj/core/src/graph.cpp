#include "lfrgen/graph.hpp"

#include <algorithm>

namespace lfrgen {

bool is_sorted_edge_list(const EdgeList& edges) {
    return std::is_sorted(edges.begin(), edges.end());
}

bool is_simple_edge_list(const EdgeList& edges) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].is_loop() || edges[i].u > edges[i].v)
            return false;
        if (i > 0 && edges[i] == edges[i - 1])
            return false;
    }
    return is_sorted_edge_list(edges);
}

node_id node_count(const EdgeList& edges) {
    node_id n = 0;
    for (const auto& e : edges)
        n = std::max(n, std::max(e.u, e.v) + 1);
    return n;
}

DegreeSequence degrees_of(const EdgeList& edges, node_id n) {
    DegreeSequence deg(n, 0);
    for (const auto& e : edges) {
        deg.at(e.u) += 1;
        deg.at(e.v) += 1;
    }
    return deg;
}

} // namespace lfrgen
