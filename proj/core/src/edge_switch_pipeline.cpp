#include <algorithm>
#include <cassert>
#include <optional>

#include "lfrgen/em/min_pq.hpp"
#include "lfrgen/em/sequence.hpp"
#include "lfrgen/em/sorter.hpp"
#include "lfrgen/es/edge_switch.hpp"

namespace lfrgen {

namespace {

// Message records exchanged between the six phases of one run. Sorters keep
// insertion order on ties, so the whole run is deterministic.

struct EdgeReq { // request nodes -> load nodes
    edge_id edge;
    std::uint64_t swap;
    std::uint8_t slot;
};
struct EdgeReqLess {
    bool operator()(const EdgeReq& a, const EdgeReq& b) const {
        if (a.edge != b.edge) return a.edge < b.edge;
        return a.swap < b.swap;
    }
};

struct EdgeMsg { // load nodes -> simulate/perform (chain heads only)
    std::uint64_t swap;
    std::uint8_t slot;
    Edge e;
};
struct EdgeMsgLess {
    bool operator()(const EdgeMsg& a, const EdgeMsg& b) const {
        if (a.swap != b.swap) return a.swap < b.swap;
        return a.slot < b.slot;
    }
};

struct IdSucc { // source-edge dependency chain link
    std::uint64_t swap;
    std::uint8_t slot;
    std::uint64_t succ_swap;
    std::uint8_t succ_slot;
};
struct IdSuccLess {
    bool operator()(const IdSucc& a, const IdSucc& b) const {
        if (a.swap != b.swap) return a.swap < b.swap;
        return a.slot < b.slot;
    }
};

struct ExistReq { // simulate -> load existence
    Edge e;
    std::uint64_t swap;
    bool may_change; ///< source-edge announcement rather than a target query
};
struct ExistReqLess {
    bool operator()(const ExistReq& a, const ExistReq& b) const {
        if (a.e != b.e) return a.e < b.e;
        return a.swap < b.swap;
    }
};

struct ExistMsg { // load existence -> perform (chain heads only)
    std::uint64_t swap;
    Edge e;
    std::uint64_t mult;
};
struct ExistMsgLess {
    bool operator()(const ExistMsg& a, const ExistMsg& b) const {
        if (a.swap != b.swap) return a.swap < b.swap;
        return a.e < b.e;
    }
};

struct ExistSucc { // target-edge dependency chain link
    std::uint64_t swap;
    Edge e;
    std::uint64_t succ_swap;
};
struct ExistSuccLess {
    bool operator()(const ExistSucc& a, const ExistSucc& b) const {
        if (a.swap != b.swap) return a.swap < b.swap;
        return a.e < b.e;
    }
};

// TFP payloads. During simulation all possible edge states flow to the
// successor slot; during perform the resolved state and updated existence
// counters flow along the chains.
struct PerformMsg {
    enum Kind : std::uint8_t { slot_state = 0, existence = 1 };
    std::uint8_t kind;
    std::uint8_t slot;
    Edge e;
    std::uint64_t mult;
};

struct SlotStates {
    std::vector<Edge> states;

    void add(const Edge& e) {
        if (std::find(states.begin(), states.end(), e) == states.end())
            states.push_back(e);
    }
};

template <typename T>
void push_unique(std::vector<T>& v, const T& x) {
    if (std::find(v.begin(), v.end(), x) == v.end())
        v.push_back(x);
}

template <bool Multigraph>
std::vector<Edge> process_run(std::vector<Edge>& edges,
                              std::span<const SwapDescriptor> swaps, RunStats* stats) {
    const std::uint64_t m = edges.size();

    // Phase 1: request nodes.
    em::Sorter<EdgeReq, EdgeReqLess> edge_reqs;
    for (std::uint64_t s = 0; s < swaps.size(); ++s) {
        edge_reqs.push(EdgeReq{swaps[s].a, s, 0});
        edge_reqs.push(EdgeReq{swaps[s].b, s, 1});
    }
    edge_reqs.sort();

    // Phase 2: load nodes. Answer the first request per edge id, chain the
    // rest, and flag requested edges invalid for the final merge.
    em::Sorter<EdgeMsg, EdgeMsgLess> edge_msgs;
    em::Sorter<IdSucc, IdSuccLess> id_succs;
    em::BitStream invalid_edge;
    std::uint64_t invalid_count = 0;
    if (stats)
        stats->edge_list_scans += 1;
    for (edge_id i = 0; i < m; ++i) {
        bool requested = false;
        std::optional<EdgeReq> prev;
        while (!edge_reqs.empty() && (*edge_reqs).edge == i) {
            const EdgeReq req = *edge_reqs;
            ++edge_reqs;
            if (!prev) {
                edge_msgs.push(EdgeMsg{req.swap, req.slot, edges[i]});
            } else {
                id_succs.push(IdSucc{prev->swap, prev->slot, req.swap, req.slot});
            }
            prev = req;
            requested = true;
        }
        invalid_edge.push(requested);
        invalid_count += requested ? 1 : 0;
    }
    edge_msgs.sort();
    id_succs.sort();
    invalid_edge.finish();

    // Phase 3: simulate swaps. Every possible state combination is pushed
    // as an existence request; source states are announced as may-change.
    em::Sorter<ExistReq, ExistReqLess> exist_reqs;
    em::MinPQ<std::uint64_t, Edge> sim_states; // priority = swap * 2 + slot
    for (std::uint64_t s = 0; s < swaps.size(); ++s) {
        SlotStates slots[2];
        while (!edge_msgs.empty() && (*edge_msgs).swap == s) {
            slots[(*edge_msgs).slot].add((*edge_msgs).e);
            ++edge_msgs;
        }
        for (int p = 0; p < 2; ++p) {
            while (!sim_states.empty() && sim_states.top_priority() == 2 * s + p) {
                slots[p].add(sim_states.top_payload());
                sim_states.pop();
            }
            if (slots[p].states.empty())
                throw UsageError("edge switch simulation lost a slot state");
        }

        if (stats)
            stats->configuration_histogram[slots[0].states.size() *
                                           slots[1].states.size()] += 1;

        std::vector<Edge> requests;       // distinct values this swap asks about
        std::vector<Edge> normal;         // values queried as switch targets
        std::vector<Edge> switched[2];    // possible post-switch slot states
        for (const Edge& x : slots[0].states)
            for (const Edge& y : slots[1].states) {
                const auto [xs, ys] = swapped_edges(x, y, swaps[s].direction);
                push_unique(switched[0], xs);
                push_unique(switched[1], ys);
                push_unique(requests, xs);
                push_unique(requests, ys);
                push_unique(normal, xs);
                push_unique(normal, ys);
            }
        for (int p = 0; p < 2; ++p)
            for (const Edge& x : slots[p].states)
                push_unique(requests, x);

        for (const Edge& e : requests) {
            const bool is_target =
                std::find(normal.begin(), normal.end(), e) != normal.end();
            exist_reqs.push(ExistReq{e, s, !is_target});
        }

        // Forward all possible slot states (kept or switched) to successors.
        while (!id_succs.empty() && (*id_succs).swap == s) {
            const IdSucc link = *id_succs;
            ++id_succs;
            const auto key = 2 * link.succ_swap + link.succ_slot;
            std::vector<Edge> forward = slots[link.slot].states;
            for (const Edge& e : switched[link.slot])
                push_unique(forward, e);
            for (const Edge& e : forward)
                sim_states.push(key, e);
        }
    }
    exist_reqs.sort();

    // Phase 4: load existence. One scan counts initial multiplicities and
    // answers each value's first requester; later requesters are chained.
    // Trailing may-change announcements have no recipient and are dropped.
    em::Sorter<ExistMsg, ExistMsgLess> exist_msgs;
    em::Sorter<ExistSucc, ExistSuccLess> exist_succs;
    if (stats)
        stats->edge_list_scans += 1;
    {
        std::size_t scan = 0;
        while (!exist_reqs.empty()) {
            const Edge value = (*exist_reqs).e;
            std::vector<ExistReq> chain;
            while (!exist_reqs.empty() && (*exist_reqs).e == value) {
                chain.push_back(*exist_reqs);
                ++exist_reqs;
            }
            while (!chain.empty() && chain.back().may_change)
                chain.pop_back();
            if (chain.empty())
                continue;

            while (scan < edges.size() && edges[scan] < value)
                ++scan;
            std::uint64_t mult = 0;
            for (auto j = scan; j < edges.size() && edges[j] == value; ++j)
                ++mult;

            if (mult > 0)
                exist_msgs.push(ExistMsg{chain.front().swap, value, mult});
            for (std::size_t i = 0; i + 1 < chain.size(); ++i)
                exist_succs.push(ExistSucc{chain[i].swap, value, chain[i + 1].swap});
        }
    }
    exist_msgs.sort();
    exist_succs.sort();

    // Phase 5: perform swaps.
    edge_msgs.rewind();
    id_succs.rewind();
    em::Sorter<Edge> edge_updates;
    em::MinPQ<std::uint64_t, PerformMsg> perform_msgs;
    for (std::uint64_t s = 0; s < swaps.size(); ++s) {
        Edge slot[2];
        bool have_slot[2] = {false, false};
        std::vector<std::pair<Edge, std::uint64_t>> mult_in;

        while (!edge_msgs.empty() && (*edge_msgs).swap == s) {
            slot[(*edge_msgs).slot] = (*edge_msgs).e;
            have_slot[(*edge_msgs).slot] = true;
            ++edge_msgs;
        }
        while (!perform_msgs.empty() && perform_msgs.top_priority() == s) {
            const PerformMsg msg = perform_msgs.top_payload();
            perform_msgs.pop();
            if (msg.kind == PerformMsg::slot_state) {
                slot[msg.slot] = msg.e;
                have_slot[msg.slot] = true;
            } else {
                mult_in.emplace_back(msg.e, msg.mult);
            }
        }
        while (!exist_msgs.empty() && (*exist_msgs).swap == s) {
            mult_in.emplace_back((*exist_msgs).e, (*exist_msgs).mult);
            ++exist_msgs;
        }
        if (!have_slot[0] || !have_slot[1])
            throw UsageError("edge switch lost a source edge state");

        const auto mult_of = [&](const Edge& e) -> std::uint64_t {
            for (const auto& [k, v] : mult_in)
                if (k == e)
                    return v;
            return 0;
        };

        const Edge x = slot[0];
        const Edge y = slot[1];
        const auto [xs, ys] = swapped_edges(x, y, swaps[s].direction);

        bool illegal = xs.is_loop() || ys.is_loop();
        if (!illegal) {
            if constexpr (Multigraph) {
                const auto elsewhere = [&](const Edge& t) {
                    std::uint64_t c = mult_of(t);
                    c -= (x == t) ? 1 : 0;
                    c -= (y == t) ? 1 : 0;
                    return c;
                };
                illegal = (xs == ys) || elsewhere(xs) > 0 || elsewhere(ys) > 0;
            } else {
                illegal = mult_of(xs) > 0 || mult_of(ys) > 0;
            }
        }
        const Edge fin[2] = {illegal ? x : xs, illegal ? y : ys};

        // Resolved source states go to successor swaps; ids without a
        // successor receive their final value in the update stream.
        for (int p = 0; p < 2; ++p) {
            bool forwarded = false;
            while (!id_succs.empty() && (*id_succs).swap == s && (*id_succs).slot == p) {
                const IdSucc link = *id_succs;
                ++id_succs;
                perform_msgs.push(link.succ_swap,
                                  PerformMsg{PerformMsg::slot_state, link.succ_slot,
                                             fin[p], 0});
                forwarded = true;
            }
            if (!forwarded)
                edge_updates.push(fin[p]);
        }

        // Updated existence counters flow down the target chains; counters
        // that drop to zero are omitted (absence decodes as zero).
        while (!exist_succs.empty() && (*exist_succs).swap == s) {
            const ExistSucc link = *exist_succs;
            ++exist_succs;
            std::int64_t mult = static_cast<std::int64_t>(mult_of(link.e));
            if (!illegal) {
                mult += (xs == link.e) + (ys == link.e);
                mult -= (x == link.e) + (y == link.e);
            }
            assert(mult >= 0);
            if (mult > 0)
                perform_msgs.push(link.succ_swap,
                                  PerformMsg{PerformMsg::existence, 0, link.e,
                                             static_cast<std::uint64_t>(mult)});
        }
    }
    edge_updates.sort();
    assert(edge_updates.size() == invalid_count);

    // Phase 6: update the edge list by merging the surviving edges with the
    // updated ones; the result is sorted again.
    if (stats)
        stats->edge_list_scans += 1;
    std::vector<Edge> merged;
    merged.reserve(edges.size());
    std::vector<Edge> touched;
    touched.reserve(static_cast<std::size_t>(edge_updates.size()));
    invalid_edge.rewind();
    std::size_t scan_pos = 0;
    const auto next_valid = [&]() -> std::optional<std::size_t> {
        while (scan_pos < edges.size()) {
            const bool invalid = invalid_edge.next();
            const auto idx = scan_pos++;
            if (!invalid)
                return idx;
        }
        return std::nullopt;
    };
    auto cur = next_valid();
    while (cur || !edge_updates.empty()) {
        if (!edge_updates.empty() && (!cur || *edge_updates <= edges[*cur])) {
            merged.push_back(*edge_updates);
            touched.push_back(*edge_updates);
            ++edge_updates;
        } else {
            merged.push_back(edges[*cur]);
            cur = next_valid();
        }
    }
    edges = std::move(merged);
    return touched;
}

template <bool Multigraph>
std::vector<Edge> pipeline_impl(std::vector<Edge> edges,
                                std::span<const SwapDescriptor> swaps, RunConfig cfg,
                                RunStats* stats, std::vector<Edge>* touched) {
    if (!is_sorted_edge_list(edges))
        throw ValidationError("edge list must be lexicographically sorted");
    if (!Multigraph && !is_simple_edge_list(edges))
        throw ValidationError("edge list must be simple");

    const std::uint64_t m = edges.size();
    for (const auto& s : swaps) {
        if (s.a >= m || s.b >= m)
            throw ValidationError("swap id out of range");
        if (s.a == s.b)
            throw ValidationError("swap must reference two distinct edge ids");
    }

    const auto run_size = cfg.effective_run_size(m);
    for (std::size_t off = 0; off < swaps.size(); off += run_size) {
        const auto len = std::min<std::size_t>(run_size, swaps.size() - off);
        auto run_touched =
            process_run<Multigraph>(edges, swaps.subspan(off, len), stats);
        if (stats)
            stats->runs += 1;
        if (touched)
            touched->insert(touched->end(), run_touched.begin(), run_touched.end());
    }
    return edges;
}

} // namespace

EdgeList apply_swaps(EdgeList edges, std::span<const SwapDescriptor> swaps, RunConfig cfg,
                     RunStats* stats, std::vector<Edge>* touched) {
    return pipeline_impl<false>(std::move(edges), swaps, cfg, stats, touched);
}

MultiEdgeList apply_swaps_multigraph(MultiEdgeList edges,
                                     std::span<const SwapDescriptor> swaps, RunConfig cfg,
                                     RunStats* stats, std::vector<Edge>* touched) {
    return pipeline_impl<true>(std::move(edges), swaps, cfg, stats, touched);
}

RunStats dependency_stats(const EdgeList& edges, std::span<const SwapDescriptor> swaps,
                          RunConfig cfg) {
    RunStats stats;
    apply_swaps(edges, swaps, cfg, &stats, nullptr);
    return stats;
}

} // namespace lfrgen
