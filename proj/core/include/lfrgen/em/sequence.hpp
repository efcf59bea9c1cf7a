#pragma once

#include <cstdio>
#include <filesystem>
#include <type_traits>
#include <vector>

#include "lfrgen/em/memory.hpp"
#include "lfrgen/graph.hpp"

namespace lfrgen::em {

/// Appendable record store: append in order, then stream back in the same
/// order, rewindable. Spills to a single temporary file once the quota is
/// exceeded; the in-memory tail is served after the spilled prefix.
template <typename T>
class Sequence {
    static_assert(std::is_trivially_copyable_v<T>,
                  "spillable records must be trivially copyable");

public:
    explicit Sequence(MemoryContextPtr ctx = MemoryContext::default_context())
        : ctx_(std::move(ctx)) {
        ctx_->register_structure();
    }

    ~Sequence() {
        if (file_)
            std::fclose(file_);
        if (!path_.empty()) {
            std::error_code ec;
            std::filesystem::remove(path_, ec);
        }
        ctx_->unregister_structure();
    }

    Sequence(const Sequence&) = delete;
    Sequence& operator=(const Sequence&) = delete;

    std::uint64_t size() const noexcept { return count_; }

    void push(const T& value) {
        if (reading_)
            throw UsageError("Sequence::push after switching to reading");
        tail_.push_back(value);
        ++count_;
        if (tail_.size() >= capacity())
            flush_tail();
    }

    void finish() {
        if (reading_)
            throw UsageError("Sequence::finish called twice");
        reading_ = true;
        if (file_)
            std::fflush(file_);
        rewind();
    }

    void rewind() {
        require_reading("rewind");
        spilled_pos_ = 0;
        tail_pos_ = 0;
        block_.clear();
        block_pos_ = 0;
        if (file_)
            std::fseek(file_, 0, SEEK_SET);
    }

    bool empty() const {
        require_reading("empty");
        return spilled_pos_ >= spilled_count_ && tail_pos_ >= tail_.size();
    }

    const T& operator*() {
        require_reading("dereference");
        if (spilled_pos_ < spilled_count_) {
            if (block_pos_ >= block_.size())
                refill();
        return block_[block_pos_];
        }
        return tail_[tail_pos_];
    }

    Sequence& operator++() {
        require_reading("advance");
        if (spilled_pos_ < spilled_count_) {
            if (block_pos_ >= block_.size())
                refill();
            ++block_pos_;
            ++spilled_pos_;
        } else {
            ++tail_pos_;
        }
        return *this;
    }

private:
    std::size_t capacity() const {
        auto cap = ctx_->quota_bytes() / sizeof(T);
        return cap < 64 ? 64 : static_cast<std::size_t>(cap);
    }

    void flush_tail() {
        if (!file_) {
            path_ = ctx_->next_spill_path();
            file_ = std::fopen(path_.string().c_str(), "wb+");
            if (!file_)
                throw std::runtime_error("cannot open spill file " + path_.string());
        }
        if (std::fwrite(tail_.data(), sizeof(T), tail_.size(), file_) != tail_.size())
            throw std::runtime_error("short write to spill file " + path_.string());
        spilled_count_ += tail_.size();
        tail_.clear();
    }

    void refill() {
        block_.resize(capacity());
        auto got = std::fread(block_.data(), sizeof(T), block_.size(), file_);
        block_.resize(got);
        block_pos_ = 0;
        if (got == 0)
            throw std::runtime_error("unexpected end of spill file " + path_.string());
    }

    void require_reading(const char* op) const {
        if (!reading_)
            throw UsageError(std::string("Sequence::") + op + " before finish");
    }

    MemoryContextPtr ctx_;
    std::uint64_t count_ = 0;
    bool reading_ = false;

    std::vector<T> tail_;
    std::size_t tail_pos_ = 0;

    std::FILE* file_ = nullptr;
    std::filesystem::path path_;
    std::uint64_t spilled_count_ = 0;
    std::uint64_t spilled_pos_ = 0;
    std::vector<T> block_;
    std::size_t block_pos_ = 0;
};

/// Append-then-read bit sequence; read order equals append order.
class BitStream {
public:
    void push(bool bit) {
        if (reading_)
            throw UsageError("BitStream::push after switching to reading");
        const auto word = count_ / 64;
        const auto off = count_ % 64;
        if (off == 0)
            words_.push_back(0);
        if (bit)
            words_[word] |= (std::uint64_t{1} << off);
        ++count_;
    }

    void finish() { reading_ = true; pos_ = 0; }

    void rewind() {
        if (!reading_)
            throw UsageError("BitStream::rewind before finish");
        pos_ = 0;
    }

    bool empty() const { return pos_ >= count_; }

    bool next() {
        if (!reading_)
            throw UsageError("BitStream::next before finish");
        if (pos_ >= count_)
            throw UsageError("BitStream::next past the end");
        const bool bit = (words_[pos_ / 64] >> (pos_ % 64)) & 1u;
        ++pos_;
        return bit;
    }

    std::uint64_t size() const noexcept { return count_; }

private:
    std::vector<std::uint64_t> words_;
    std::uint64_t count_ = 0;
    std::uint64_t pos_ = 0;
    bool reading_ = false;
};

} // namespace lfrgen::em
