#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lfrgen {

using node_id = std::uint64_t;
using edge_id = std::uint64_t;
using community_id = std::uint64_t;

/// Thrown when inputs violate a documented precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an API is driven outside its legal call sequence.
class UsageError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Thrown by randomized repair loops that exhausted their retry budget.
/// The defect count allows callers to report how far the repair got.
class LasVegasFailure : public std::runtime_error {
public:
    LasVegasFailure(const std::string& what, std::uint64_t remaining_defects)
        : std::runtime_error(what), remaining_defects_(remaining_defects) {}

    std::uint64_t remaining_defects() const noexcept { return remaining_defects_; }

private:
    std::uint64_t remaining_defects_;
};

/// Undirected edge stored as an ordered pair [u, v] with u <= v.
/// The ordering is algorithmic only and carries no meaning for the graph.
struct Edge {
    node_id u = 0;
    node_id v = 0;

    constexpr Edge() = default;
    constexpr Edge(node_id a, node_id b) : u(a), v(b) {}

    constexpr bool is_loop() const noexcept { return u == v; }

    constexpr Edge normalized() const noexcept {
        return u <= v ? *this : Edge{v, u};
    }

    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Lexicographically sorted edge list. Simplicity is an invariant of the
/// producing algorithm, not of the container; use the checks below.
using EdgeList = std::vector<Edge>;

/// Sorted edge list that may contain loops and parallel edges.
using MultiEdgeList = std::vector<Edge>;

using DegreeSequence = std::vector<std::uint64_t>;

bool is_sorted_edge_list(const EdgeList& edges);
bool is_simple_edge_list(const EdgeList& edges);

/// Number of nodes implied by an edge list (max node id + 1), 0 if empty.
node_id node_count(const EdgeList& edges);

/// Per-node degrees; loops count twice. `n` may exceed the largest node id.
DegreeSequence degrees_of(const EdgeList& edges, node_id n);

} // namespace lfrgen
