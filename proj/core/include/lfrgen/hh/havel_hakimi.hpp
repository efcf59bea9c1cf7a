#pragma once

#include <functional>
#include <vector>

#include "lfrgen/graph.hpp"
#include "lfrgen/hh/group_list.hpp"

namespace lfrgen {

/// Pull-based deterministic realization of a non-decreasing degree sequence.
///
/// Edges appear grouped by the extracted node in increasing node order and
/// lexicographically sorted within each extraction, so the whole stream is
/// lexicographically sorted. Node ids are 1-based like the group list;
/// callers that want 0-based ids shift them.
///
/// Non-graphical inputs are not an error: unsatisfiable degree requests are
/// dropped, counted in unmet(), and graphical() turns false.
class HavelHakimiGenerator {
public:
    using IterationObserver = std::function<void(const std::vector<DegreeGroup>&)>;

    explicit HavelHakimiGenerator(GroupList list) : list_(std::move(list)) {}
    explicit HavelHakimiGenerator(const DegreeSequence& degrees)
        : HavelHakimiGenerator(GroupList::compact(degrees)) {}

    /// Called after every completed iteration with the decoded list state.
    void set_iteration_observer(IterationObserver obs) { observer_ = std::move(obs); }

    /// Pulls the next edge; returns false when the stream is exhausted.
    bool next(Edge& out);

    /// Only meaningful once next() returned false.
    bool graphical() const noexcept { return unmet_ == 0; }
    std::uint64_t unmet() const noexcept { return unmet_; }

    std::uint64_t peak_group_count() const noexcept { return list_.peak_group_count(); }

    /// Node and dropped half-edge count per unsatisfiable extraction.
    const std::vector<std::pair<node_id, std::uint64_t>>& shortfalls() const noexcept {
        return shortfalls_;
    }

private:
    bool run_iteration();

    GroupList list_;
    IterationObserver observer_;
    ExtractionStep step_{};
    node_id cursor_ = 0;
    bool in_second_range_ = false;
    bool step_active_ = false;
    std::uint64_t unmet_ = 0;
    std::vector<std::pair<node_id, std::uint64_t>> shortfalls_;
};

struct HhResult {
    EdgeList edges;       ///< lexicographically sorted, simple, 1-based ids
    bool graphical = true;
    std::uint64_t unmet = 0; ///< dropped half-edges if not graphical
};

/// Materializes the whole realization.
HhResult hh_edges(const DegreeSequence& degrees);

/// True iff some simple graph realizes the sequence. Runs the group-list
/// iteration without emitting edges, so it only costs time linear in n.
bool is_graphical(const DegreeSequence& degrees);

/// The degree sequence actually realized once unsatisfiable requests are
/// dropped; equals the input iff it is graphical. The result is graphical.
DegreeSequence hh_realized_degrees(const DegreeSequence& degrees);

} // namespace lfrgen
