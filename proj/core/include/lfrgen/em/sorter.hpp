#pragma once

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <type_traits>
#include <vector>

#include "lfrgen/em/memory.hpp"
#include "lfrgen/graph.hpp"

namespace lfrgen::em {

/// Two-phase sorted container.
///
/// Items are pushed in arbitrary order while the sorter is in the filling
/// mode. After an explicit switch via sort(), the container becomes
/// read-only and streams its elements in non-decreasing comparator order;
/// the stream can be rewound at any time.
///
/// Ties are broken by insertion order, so the output stream is a
/// deterministic function of the push sequence. Once the per-structure
/// memory quota is exceeded, sorted runs of fixed-size records are spilled
/// to temporary files and merged k-way while streaming.
template <typename T, typename Compare = std::less<T>>
class Sorter {
    static_assert(std::is_trivially_copyable_v<T>,
                  "spillable records must be trivially copyable");

public:
    enum class Mode { filling, reading };

    explicit Sorter(Compare cmp = {}, MemoryContextPtr ctx = MemoryContext::default_context())
        : cmp_(std::move(cmp)), ctx_(std::move(ctx)) {
        ctx_->register_structure();
    }

    ~Sorter() {
        close_runs();
        remove_run_files();
        ctx_->unregister_structure();
    }

    Sorter(const Sorter&) = delete;
    Sorter& operator=(const Sorter&) = delete;

    Mode mode() const noexcept { return mode_; }
    std::uint64_t size() const noexcept { return count_; }

    void push(const T& value) {
        if (mode_ != Mode::filling)
            throw UsageError("Sorter::push after the switch to reading");
        buffer_.push_back(value);
        ++count_;
        if (buffer_.size() >= fill_capacity())
            spill_buffer();
    }

    /// Switches to reading mode. Idempotent calls are an error.
    void sort() {
        if (mode_ != Mode::filling)
            throw UsageError("Sorter::sort called twice");
        if (run_files_.empty()) {
            std::stable_sort(buffer_.begin(), buffer_.end(), cmp_);
        } else {
            if (!buffer_.empty())
                spill_buffer();
        }
        mode_ = Mode::reading;
        rewind();
    }

    void rewind() {
        require_reading("rewind");
        if (run_files_.empty()) {
            mem_pos_ = 0;
        } else {
            open_runs();
            rebuild_heads();
        }
    }

    bool empty() const {
        require_reading("empty");
        if (run_files_.empty())
            return mem_pos_ >= buffer_.size();
        return heads_.empty();
    }

    const T& operator*() const {
        require_reading("dereference");
        if (run_files_.empty())
            return buffer_[mem_pos_];
        return runs_[heads_.front()].head;
    }

    Sorter& operator++() {
        require_reading("advance");
        if (run_files_.empty()) {
            ++mem_pos_;
            return *this;
        }
        auto idx = heads_.front();
        std::pop_heap(heads_.begin(), heads_.end(), head_cmp());
        heads_.pop_back();
        if (runs_[idx].advance())
            heads_.push_back(idx), std::push_heap(heads_.begin(), heads_.end(), head_cmp());
        return *this;
    }

    /// Drains the stream into a vector (convenience for small outputs).
    std::vector<T> drain() {
        std::vector<T> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (rewind(); !empty(); ++(*this))
            out.push_back(**this);
        return out;
    }

private:
    struct RunReader {
        std::filesystem::path path;
        std::FILE* file = nullptr;
        std::vector<T> block;
        std::size_t block_pos = 0;
        std::size_t block_capacity = 0;
        T head{};

        bool refill() {
            block.resize(block_capacity);
            auto got = std::fread(block.data(), sizeof(T), block.size(), file);
            block.resize(got);
            block_pos = 0;
            return got > 0;
        }

        bool advance() {
            if (block_pos >= block.size() && !refill())
                return false;
            head = block[block_pos++];
            return true;
        }
    };

    std::size_t fill_capacity() const {
        auto cap = ctx_->quota_bytes() / sizeof(T);
        return cap < 64 ? 64 : static_cast<std::size_t>(cap);
    }

    void spill_buffer() {
        std::stable_sort(buffer_.begin(), buffer_.end(), cmp_);
        auto path = ctx_->next_spill_path();
        std::FILE* f = std::fopen(path.string().c_str(), "wb");
        if (!f)
            throw std::runtime_error("cannot open spill file " + path.string());
        if (!buffer_.empty() &&
            std::fwrite(buffer_.data(), sizeof(T), buffer_.size(), f) != buffer_.size()) {
            std::fclose(f);
            throw std::runtime_error("short write to spill file " + path.string());
        }
        std::fclose(f);
        run_files_.push_back(std::move(path));
        buffer_.clear();
    }

    void open_runs() {
        close_runs();
        runs_.clear();
        runs_.resize(run_files_.size());
        // Split the read quota between all runs.
        auto per_run = ctx_->quota_bytes() / (run_files_.size() + 1) / sizeof(T);
        if (per_run < 16)
            per_run = 16;
        for (std::size_t i = 0; i < run_files_.size(); ++i) {
            runs_[i].path = run_files_[i];
            runs_[i].block_capacity = static_cast<std::size_t>(per_run);
            runs_[i].file = std::fopen(run_files_[i].string().c_str(), "rb");
            if (!runs_[i].file)
                throw std::runtime_error("cannot reopen spill file " + run_files_[i].string());
        }
    }

    void rebuild_heads() {
        heads_.clear();
        for (std::size_t i = 0; i < runs_.size(); ++i)
            if (runs_[i].advance())
                heads_.push_back(i);
        std::make_heap(heads_.begin(), heads_.end(), head_cmp());
    }

    // Min-heap over run heads; ties resolved by run index, which preserves
    // insertion order because runs are spilled chronologically.
    auto head_cmp() {
        return [this](std::size_t a, std::size_t b) {
            if (cmp_(runs_[b].head, runs_[a].head)) return true;
            if (cmp_(runs_[a].head, runs_[b].head)) return false;
            return b < a;
        };
    }

    void close_runs() {
        for (auto& r : runs_)
            if (r.file) {
                std::fclose(r.file);
                r.file = nullptr;
            }
    }

    void remove_run_files() {
        for (const auto& p : run_files_) {
            std::error_code ec;
            std::filesystem::remove(p, ec);
        }
    }

    void require_reading(const char* op) const {
        if (mode_ != Mode::reading)
            throw UsageError(std::string("Sorter::") + op + " before the switch to reading");
    }

    Compare cmp_;
    MemoryContextPtr ctx_;
    Mode mode_ = Mode::filling;
    std::uint64_t count_ = 0;

    std::vector<T> buffer_;
    std::size_t mem_pos_ = 0;

    std::vector<std::filesystem::path> run_files_;
    std::vector<RunReader> runs_;
    std::vector<std::size_t> heads_;
};

} // namespace lfrgen::em
