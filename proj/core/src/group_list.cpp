#include "lfrgen/hh/group_list.hpp"

#include <cassert>

namespace lfrgen {

GroupList GroupList::compact(const DegreeSequence& degrees) {
    GroupList list;
    node_id next_id = 1;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 1)
            throw ValidationError("degree sequence entries must be positive");
        if (i > 0 && degrees[i] < degrees[i - 1])
            throw ValidationError("degree sequence must be non-decreasing");
        if (!list.groups_.empty() && list.groups_.back().delta == degrees[i]) {
            list.groups_.back().n += 1;
        } else {
            list.groups_.push_back(Entry{next_id, 1, degrees[i], false, false});
        }
        ++next_id;
    }
    list.remaining_nodes_ = degrees.size();
    list.stable_begin_ = list.groups_.end();
    list.peak_groups_ = list.groups_.size();
    return list;
}

bool GroupList::advance(ExtractionStep& step, std::uint64_t& unmet) {
    if (groups_.empty())
        return false;

    const std::uint64_t this_iter = counter_ + 1;

    // Extract the head node. A stable head is reactivated first.
    auto head = groups_.begin();
    if (head->stable) {
        head->delta -= counter_;
        head->stable = false;
        stable_nodes_ -= head->n;
        stable_begin_ = std::next(head);
    }
    step = ExtractionStep{};
    step.node = head->b;
    std::uint64_t demand = head->delta;
    head->b += 1;
    head->n -= 1;
    remaining_nodes_ -= 1;
    if (head->n == 0)
        groups_.erase(head);

    if (groups_.empty()) {
        unmet += demand;
        counter_ = this_iter;
        return true;
    }

    if (demand > remaining_nodes_) {
        unmet += demand - remaining_nodes_;
        demand = remaining_nodes_;
    }
    assert(demand >= stable_nodes_);
    std::uint64_t active_take = demand - stable_nodes_;

    const node_id last_id = groups_.back().b + groups_.back().n - 1;

    // Serve the active part of the demand by walking backwards from the
    // stable suffix. Whole groups are consumed (C1); at most one group at
    // the frontier is split (C2), connecting to its lowest ids.
    auto it = stable_begin_;
    std::uint64_t need = active_take;
    bool split_done = false;
    List::iterator second_frag = groups_.end();
    while (need > 0) {
        --it;
        if (it->n <= need) {
            need -= it->n;
            it->delta -= 1;
            it->consumed_whole = true;
        } else {
            Entry second{it->b + need, it->n - need, it->delta, false, false};
            it->n = need;
            it->delta -= 1;
            second_frag = groups_.insert(std::next(it), second);
            split_done = true;
            need = 0;
        }
    }
    auto frontier = (active_take > 0) ? it : stable_begin_;

    // Partner id ranges, captured before any merging below (merges only
    // rewrite group records, never the ids they cover).
    if (split_done) {
        step.r1_lo = frontier->b;
        step.r1_hi = frontier->b + frontier->n;
        step.r2_lo = second_frag->b + second_frag->n;
        step.r2_hi = last_id + 1;
    } else if (demand > 0) {
        step.r1_lo = frontier->b;
        step.r1_hi = last_id + 1;
    }
    assert(step.partner_count() == demand);

    bool frontier_erased = false;
    if (active_take > 0 && frontier->delta == 0) {
        // Only the minimum degree can reach zero, so this is the head group.
        assert(frontier == groups_.begin());
        groups_.erase(frontier);
        frontier_erased = true;
    }

    // Merge check at the boundary between untouched and decremented groups.
    if (active_take > 0) {
        if (!frontier_erased && frontier != groups_.begin()) {
            auto pred = std::prev(frontier);
            if (pred->delta == frontier->delta) {
                pred->n += frontier->n;
                pred->consumed_whole = false;
                groups_.erase(frontier);
            }
        }
    } else if (stable_begin_ != groups_.begin() && stable_begin_ != groups_.end()) {
        // The whole demand was served by the stable suffix; its first group
        // may now collide with the last untouched active group.
        auto pred = std::prev(stable_begin_);
        if (pred->delta == stable_begin_->delta - this_iter) {
            stable_nodes_ -= stable_begin_->n;
            pred->n += stable_begin_->n;
            auto dead = stable_begin_;
            ++stable_begin_;
            groups_.erase(dead);
        }
    }

    // A split leaves the untouched second fragment next to a decremented
    // successor; equal degrees there are merged as well.
    if (split_done) {
        auto succ = std::next(second_frag);
        if (succ != groups_.end()) {
            const std::uint64_t succ_eff =
                succ->stable ? succ->delta - this_iter : succ->delta;
            if (second_frag->delta == succ_eff) {
                if (succ->stable) {
                    stable_nodes_ -= succ->n;
                    if (stable_begin_ == succ)
                        stable_begin_ = std::next(succ);
                }
                second_frag->n += succ->n;
                groups_.erase(succ);
            }
        }
    }

    // Wholly consumed groups adjacent to the stable suffix become stable:
    // from now on they receive one edge per iteration, tracked implicitly
    // by the counter (stored = absolute + iteration at stabilization).
    while (stable_begin_ != groups_.begin()) {
        auto cand = std::prev(stable_begin_);
        if (!cand->consumed_whole)
            break;
        cand->consumed_whole = false;
        cand->stable = true;
        cand->delta += this_iter;
        stable_nodes_ += cand->n;
        stable_begin_ = cand;
    }

    counter_ = this_iter;
    if (groups_.size() > peak_groups_)
        peak_groups_ = groups_.size();
    return true;
}

std::vector<DegreeGroup> GroupList::snapshot() const {
    std::vector<DegreeGroup> out;
    out.reserve(groups_.size());
    for (const auto& e : groups_)
        out.push_back(DegreeGroup{e.b, e.n, effective_degree(e)});
    return out;
}

void GroupList::check_invariants() const {
    const Entry* prev = nullptr;
    for (const auto& e : groups_) {
        if (e.n < 1)
            throw UsageError("group list invariant: empty group");
        if (effective_degree(e) < 1)
            throw UsageError("group list invariant: non-positive degree");
        if (prev) {
            if (effective_degree(*prev) >= effective_degree(e))
                throw UsageError("group list invariant I1 violated");
            if (prev->b + prev->n != e.b)
                throw UsageError("group list invariant I2 violated");
        }
        prev = &e;
    }
}

} // namespace lfrgen
