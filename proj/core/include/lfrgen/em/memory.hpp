#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "lfrgen/graph.hpp"

namespace lfrgen::em {

/// Bytes of working memory the streaming structures may hold resident.
/// Exceeding the budget triggers a spill to disk, never a failure.
struct MemoryBudget {
    std::uint64_t bytes = 256ull << 20;

    void validate() const {
        if (bytes == 0)
            throw ValidationError("memory budget must be positive");
    }
};

/// Shared accounting for all streaming structures of a pipeline.
///
/// Accounting is approximate: every registered structure gets an equal
/// share of the budget. Spill files are temporary and carry no stable
/// format across versions.
class MemoryContext {
public:
    explicit MemoryContext(MemoryBudget budget = {},
                           std::filesystem::path spill_dir = {});
    ~MemoryContext();

    MemoryContext(const MemoryContext&) = delete;
    MemoryContext& operator=(const MemoryContext&) = delete;

    std::uint64_t budget_bytes() const noexcept { return budget_.bytes; }

    /// Per-structure byte quota: total / active structures.
    std::uint64_t quota_bytes() const noexcept;

    const std::filesystem::path& spill_dir() const noexcept { return spill_dir_; }

    /// Creates a fresh spill file path (the file is not opened).
    std::filesystem::path next_spill_path();

    void register_structure() noexcept { ++active_; }
    void unregister_structure() noexcept { --active_; }

    /// Process-wide default context (256 MiB, system temp directory).
    static const std::shared_ptr<MemoryContext>& default_context();

    /// Replaces the process-wide default (used by the CLI's --memory-budget).
    static void set_default(std::shared_ptr<MemoryContext> ctx);

private:
    MemoryBudget budget_;
    std::filesystem::path spill_dir_;
    bool owns_dir_ = false;
    std::atomic<std::uint64_t> active_{0};
    std::atomic<std::uint64_t> file_counter_{0};
};

using MemoryContextPtr = std::shared_ptr<MemoryContext>;

} // namespace lfrgen::em
