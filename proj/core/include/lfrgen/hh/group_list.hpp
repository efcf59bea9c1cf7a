#pragma once

#include <cstdint>
#include <list>
#include <vector>

#include "lfrgen/graph.hpp"

namespace lfrgen {

/// Run of consecutive node ids sharing one pending degree (decoded view).
struct DegreeGroup {
    node_id first_node = 0;   ///< id of the group's first node (1-based)
    std::uint64_t count = 0;  ///< number of nodes in the group
    std::uint64_t degree = 0; ///< effective pending degree

    friend constexpr auto operator<=>(const DegreeGroup&, const DegreeGroup&) = default;
};

/// Partner node ids a single realization step connects to: up to two
/// contiguous id ranges, [lo, hi) each, emitted in increasing order.
struct ExtractionStep {
    node_id node = 0;       ///< the extracted minimum-degree node
    node_id r1_lo = 0, r1_hi = 0;
    node_id r2_lo = 0, r2_hi = 0;

    std::uint64_t partner_count() const noexcept {
        return (r1_hi - r1_lo) + (r2_hi - r2_lo);
    }
};

/// Run-length compressed degree sequence.
///
/// Invariants at every iteration boundary:
///   (I1) effective degrees are strictly increasing along the list,
///   (I2) node id ranges are gap-free: b_j + n_j = b_{j+1}.
///
/// Trailing groups that are consumed wholly by every iteration are *stable*:
/// their pending degrees are not rewritten each round. Instead a global
/// iteration counter I is maintained and a stable group's stored degree is
/// offset-encoded so that its effective degree equals (stored - I). A group
/// is reactivated by subtracting the current counter.
class GroupList {
public:
    /// Compacts a non-decreasing positive degree sequence; node ids are
    /// assigned 1..n in order, one group per distinct degree value.
    static GroupList compact(const DegreeSequence& degrees);

    bool exhausted() const noexcept { return groups_.empty(); }
    std::uint64_t group_count() const noexcept { return groups_.size(); }
    std::uint64_t node_count() const noexcept { return remaining_nodes_; }
    std::uint64_t iteration_counter() const noexcept { return counter_; }
    std::uint64_t peak_group_count() const noexcept { return peak_groups_; }
    std::uint64_t stable_group_nodes() const noexcept { return stable_nodes_; }

    /// Extracts the minimum-degree node and serves its degree demand from
    /// the tail of the list. Unsatisfiable demand (a non-graphical input)
    /// is dropped and counted in `unmet`. Returns false once exhausted.
    bool advance(ExtractionStep& step, std::uint64_t& unmet);

    /// Effective (decoded) view of the current list.
    std::vector<DegreeGroup> snapshot() const;

    /// Verifies I1/I2; throws UsageError on violation. Cheap enough to run
    /// after every iteration in tests.
    void check_invariants() const;

private:
    struct Entry {
        node_id b = 0;
        std::uint64_t n = 0;
        std::uint64_t delta = 0; ///< absolute if active, offset-encoded if stable
        bool stable = false;
        bool consumed_whole = false; ///< scratch flag, one iteration only
    };

    using List = std::list<Entry>;

    std::uint64_t effective_degree(const Entry& e) const {
        return e.stable ? e.delta - counter_ : e.delta;
    }

    List groups_;
    List::iterator stable_begin_; ///< first stable group (suffix), or end()
    std::uint64_t stable_nodes_ = 0;
    std::uint64_t remaining_nodes_ = 0;
    std::uint64_t counter_ = 0;
    std::uint64_t peak_groups_ = 0;
};

} // namespace lfrgen
