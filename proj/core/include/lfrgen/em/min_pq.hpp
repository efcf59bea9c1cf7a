#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <type_traits>
#include <vector>

#include "lfrgen/em/memory.hpp"
#include "lfrgen/graph.hpp"

namespace lfrgen::em {

/// Minimum priority queue with stable tie-breaking (insertion order).
///
/// When the in-memory heap outgrows its quota it is flushed as a sorted run
/// to disk; pop() then takes the minimum across the heap and all run heads.
/// Under the time-forward-processing access pattern runs stay sorted because
/// later pushes always carry later priorities than already-popped entries.
template <typename Priority, typename Payload>
class MinPQ {
    static_assert(std::is_trivially_copyable_v<Priority> &&
                      std::is_trivially_copyable_v<Payload>,
                  "spillable records must be trivially copyable");

    struct Entry {
        Priority priority;
        std::uint64_t seq;
        Payload payload;
    };

public:
    explicit MinPQ(MemoryContextPtr ctx = MemoryContext::default_context())
        : ctx_(std::move(ctx)) {
        ctx_->register_structure();
    }

    ~MinPQ() {
        for (auto& r : runs_)
            if (r.file)
                std::fclose(r.file);
        for (auto& r : runs_) {
            std::error_code ec;
            std::filesystem::remove(r.path, ec);
        }
        ctx_->unregister_structure();
    }

    MinPQ(const MinPQ&) = delete;
    MinPQ& operator=(const MinPQ&) = delete;

    bool empty() const noexcept { return size_ == 0; }
    std::uint64_t size() const noexcept { return size_; }

    void push(const Priority& priority, const Payload& payload) {
        heap_.push_back(Entry{priority, seq_++, payload});
        std::push_heap(heap_.begin(), heap_.end(), heap_cmp);
        ++size_;
        if (heap_.size() >= capacity())
            spill_heap();
    }

    const Priority& top_priority() {
        refresh_top();
        return top_from_run_ ? runs_[top_run_].head.priority : heap_.front().priority;
    }

    const Payload& top_payload() {
        refresh_top();
        return top_from_run_ ? runs_[top_run_].head.payload : heap_.front().payload;
    }

    void pop() {
        refresh_top();
        if (top_from_run_) {
            if (!runs_[top_run_].advance())
                runs_[top_run_].exhausted = true;
        } else {
            std::pop_heap(heap_.begin(), heap_.end(), heap_cmp);
            heap_.pop_back();
        }
        --size_;
    }

private:
    struct RunReader {
        std::filesystem::path path;
        std::FILE* file = nullptr;
        std::vector<Entry> block;
        std::size_t block_pos = 0;
        std::size_t block_capacity = 1024;
        Entry head{};
        bool exhausted = false;

        bool advance() {
            if (block_pos >= block.size()) {
                block.resize(block_capacity);
                auto got = std::fread(block.data(), sizeof(Entry), block.size(), file);
                block.resize(got);
                block_pos = 0;
                if (got == 0)
                    return false;
            }
            head = block[block_pos++];
            return true;
        }
    };

    static bool entry_less(const Entry& a, const Entry& b) {
        if (a.priority < b.priority) return true;
        if (b.priority < a.priority) return false;
        return a.seq < b.seq;
    }

    // std::push_heap builds a max-heap; invert to get the minimum on top.
    static bool heap_cmp(const Entry& a, const Entry& b) { return entry_less(b, a); }

    std::size_t capacity() const {
        auto cap = ctx_->quota_bytes() / sizeof(Entry);
        return cap < 64 ? 64 : static_cast<std::size_t>(cap);
    }

    void spill_heap() {
        std::sort(heap_.begin(), heap_.end(), entry_less);
        RunReader run;
        run.path = ctx_->next_spill_path();
        run.file = std::fopen(run.path.string().c_str(), "wb+");
        if (!run.file)
            throw std::runtime_error("cannot open spill file " + run.path.string());
        if (std::fwrite(heap_.data(), sizeof(Entry), heap_.size(), run.file) != heap_.size())
            throw std::runtime_error("short write to spill file " + run.path.string());
        std::fflush(run.file);
        std::fseek(run.file, 0, SEEK_SET);
        heap_.clear();
        runs_.push_back(std::move(run));
        if (!runs_.back().advance())
            runs_.back().exhausted = true;
    }

    void refresh_top() {
        if (size_ == 0)
            throw UsageError("MinPQ::top/pop on an empty queue");
        top_from_run_ = false;
        bool have = !heap_.empty();
        Entry best = have ? heap_.front() : Entry{};
        for (std::size_t i = 0; i < runs_.size(); ++i) {
            if (runs_[i].exhausted)
                continue;
            if (!have || entry_less(runs_[i].head, best)) {
                best = runs_[i].head;
                have = true;
                top_from_run_ = true;
                top_run_ = i;
            }
        }
    }

    MemoryContextPtr ctx_;
    std::vector<Entry> heap_;
    std::vector<RunReader> runs_;
    std::uint64_t seq_ = 0;
    std::uint64_t size_ = 0;
    bool top_from_run_ = false;
    std::size_t top_run_ = 0;
};

} // namespace lfrgen::em
