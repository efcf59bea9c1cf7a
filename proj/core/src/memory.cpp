#include "lfrgen/em/memory.hpp"

#include <mutex>
#include <random>
#include <system_error>

namespace lfrgen::em {

namespace {

std::filesystem::path make_private_dir() {
    auto base = std::filesystem::temp_directory_path();
    std::random_device rd;
    for (int attempt = 0; attempt < 64; ++attempt) {
        auto candidate = base / ("lfrgen-spill-" + std::to_string(rd()));
        std::error_code ec;
        if (std::filesystem::create_directory(candidate, ec))
            return candidate;
    }
    return base;
}

std::mutex g_default_mutex;
std::shared_ptr<MemoryContext> g_default;

} // namespace

MemoryContext::MemoryContext(MemoryBudget budget, std::filesystem::path spill_dir)
    : budget_(budget) {
    budget_.validate();
    if (spill_dir.empty()) {
        spill_dir_ = make_private_dir();
        owns_dir_ = true;
    } else {
        std::filesystem::create_directories(spill_dir);
        spill_dir_ = std::move(spill_dir);
    }
}

MemoryContext::~MemoryContext() {
    if (owns_dir_) {
        std::error_code ec;
        std::filesystem::remove_all(spill_dir_, ec);
    }
}

std::uint64_t MemoryContext::quota_bytes() const noexcept {
    auto active = active_.load();
    if (active == 0)
        active = 1;
    auto quota = budget_.bytes / active;
    // A structure can always hold at least a small working buffer.
    return quota < 4096 ? 4096 : quota;
}

std::filesystem::path MemoryContext::next_spill_path() {
    auto id = file_counter_.fetch_add(1);
    return spill_dir_ / ("run-" + std::to_string(id) + ".tmp");
}

const std::shared_ptr<MemoryContext>& MemoryContext::default_context() {
    std::lock_guard<std::mutex> lock(g_default_mutex);
    if (!g_default)
        g_default = std::make_shared<MemoryContext>();
    return g_default;
}

void MemoryContext::set_default(std::shared_ptr<MemoryContext> ctx) {
    std::lock_guard<std::mutex> lock(g_default_mutex);
    g_default = std::move(ctx);
}

} // namespace lfrgen::em
