#pragma once

#include <cstdint>
#include <vector>

#include "lfrgen/em/min_pq.hpp"

namespace lfrgen::em {

/// Time forward processing channel: events are visited in increasing order
/// of their ids and receive exactly the payload multiset addressed to them.
/// Messages may only be sent forward along the (topologically ordered) DAG.
template <typename Payload, typename EventId = std::uint64_t>
class TimeForwardChannel {
public:
    explicit TimeForwardChannel(MemoryContextPtr ctx = MemoryContext::default_context())
        : pq_(std::move(ctx)) {}

    void send(EventId recipient, const Payload& payload) {
        if (delivered_any_ && recipient <= last_event_)
            throw UsageError("TFP message addressed to an already-processed event");
        pq_.push(recipient, payload);
    }

    /// Claims all messages addressed to `event`. Events must be visited in
    /// increasing order; skipping an event that still holds messages is an
    /// error since those payloads could never be delivered.
    std::vector<Payload> receive(EventId event) {
        if (delivered_any_ && event <= last_event_)
            throw UsageError("TFP events must be visited in increasing order");
        std::vector<Payload> out;
        while (!pq_.empty()) {
            if (pq_.top_priority() < event)
                throw UsageError("undelivered TFP message to a skipped event");
            if (event < pq_.top_priority())
                break;
            out.push_back(pq_.top_payload());
            pq_.pop();
        }
        last_event_ = event;
        delivered_any_ = true;
        return out;
    }

    bool has_pending() const noexcept { return !pq_.empty(); }

private:
    MinPQ<EventId, Payload> pq_;
    EventId last_event_{};
    bool delivered_any_ = false;
};

} // namespace lfrgen::em
