#include "lfrgen/cm/configuration_model.hpp"

#include <algorithm>
#include <cmath>

#include "lfrgen/em/sorter.hpp"

namespace lfrgen {

std::vector<node_id> half_edge_sequence(const DegreeSequence& degrees) {
    std::vector<node_id> seq;
    std::uint64_t total = 0;
    for (auto d : degrees)
        total += d;
    seq.reserve(static_cast<std::size_t>(total));
    for (std::size_t v = 0; v < degrees.size(); ++v)
        for (std::uint64_t i = 0; i < degrees[v]; ++i)
            seq.push_back(static_cast<node_id>(v + 1));
    return seq;
}

MultiEdgeList pair_half_edges(std::span<const node_id> shuffled) {
    if (shuffled.size() % 2 != 0)
        throw ValidationError("half-edge sequence length must be even");
    em::Sorter<Edge> sorter;
    for (std::size_t i = 0; i < shuffled.size(); i += 2)
        sorter.push(Edge{shuffled[i], shuffled[i + 1]}.normalized());
    sorter.sort();
    return sorter.drain();
}

MultiEdgeList cm_sample(const DegreeSequence& degrees, Rng& rng) {
    std::uint64_t total = 0;
    for (auto d : degrees)
        total += d;
    if (total % 2 != 0)
        throw ValidationError("degree sum must be even for a perfect matching");

    struct Keyed {
        std::uint64_t key;
        node_id label;
    };
    struct KeyLess {
        bool operator()(const Keyed& a, const Keyed& b) const { return a.key < b.key; }
    };

    em::Sorter<Keyed, KeyLess> shuffler;
    for (std::size_t v = 0; v < degrees.size(); ++v)
        for (std::uint64_t i = 0; i < degrees[v]; ++i)
            shuffler.push(Keyed{rng.next_u64(), static_cast<node_id>(v + 1)});
    shuffler.sort();

    // Runs of equal keys would keep their insertion order; re-randomize them
    // locally so the permutation stays exactly uniform. Collisions among
    // 64-bit keys are nearly impossible at any realistic scale.
    std::vector<node_id> shuffled;
    shuffled.reserve(static_cast<std::size_t>(total));
    std::uint64_t run_key = 0;
    std::size_t run_start = 0;
    const auto close_run = [&]() {
        for (std::size_t i = shuffled.size() - 1; i > run_start; --i)
            std::swap(shuffled[i], shuffled[run_start + rng.below(i - run_start + 1)]);
    };
    while (!shuffler.empty()) {
        const Keyed cur = *shuffler;
        ++shuffler;
        if (shuffled.empty() || cur.key != run_key) {
            if (shuffled.size() - run_start > 1)
                close_run();
            run_key = cur.key;
            run_start = shuffled.size();
        }
        shuffled.push_back(cur.label);
    }
    if (shuffled.size() - run_start > 1)
        close_run();

    return pair_half_edges(shuffled);
}

MultiEdgeList cm_sample(const DegreeSequence& degrees, std::uint64_t seed) {
    Rng rng(seed);
    return cm_sample(degrees, rng);
}

namespace {

struct Moments {
    double mean = 0;
    double mean_sq = 0;
    std::uint64_t n = 0;
};

Moments moments_of(const DegreeSequence& degrees) {
    Moments m;
    m.n = degrees.size();
    if (m.n == 0)
        throw ValidationError("degree sequence must not be empty");
    double sum = 0, sum_sq = 0;
    for (auto d : degrees) {
        sum += static_cast<double>(d);
        sum_sq += static_cast<double>(d) * static_cast<double>(d);
    }
    m.mean = sum / static_cast<double>(m.n);
    m.mean_sq = sum_sq / static_cast<double>(m.n);
    return m;
}

} // namespace

double expected_self_loops(const DegreeSequence& degrees) {
    const auto m = moments_of(degrees);
    const double n = static_cast<double>(m.n);
    return (m.mean_sq - m.mean) / (2.0 * (m.mean - 1.0 / n));
}

double expected_multi_edges(const DegreeSequence& degrees) {
    const auto m = moments_of(degrees);
    const double n = static_cast<double>(m.n);
    const double num = (m.mean_sq - m.mean) * (m.mean_sq - m.mean);
    return 0.5 * num / ((m.mean - 1.0 / n) * (m.mean - 3.0 / n));
}

PldDefectBounds pld_defect_bounds(std::uint64_t a, std::uint64_t b) {
    if (a < 1 || b <= a)
        throw ValidationError("pld_defect_bounds requires 1 <= a < b");
    const double loops = 0.5 * (static_cast<double>(b) - static_cast<double>(a) + 1.0) /
                         (std::log(static_cast<double>(b) + 1.0) -
                          std::log(static_cast<double>(a)));
    return PldDefectBounds{loops, loops * loops};
}

DefectReport find_illegal(const MultiEdgeList& edges) {
    if (!is_sorted_edge_list(edges))
        throw ValidationError("find_illegal expects a sorted edge list");
    DefectReport report;
    std::size_t i = 0;
    while (i < edges.size()) {
        std::size_t j = i + 1;
        while (j < edges.size() && edges[j] == edges[i])
            ++j;
        if (edges[i].is_loop()) {
            for (auto k = i; k < j; ++k)
                report.self_loops.push_back(k);
        } else if (j - i > 1) {
            DefectReport::MultiGroup group;
            group.value = edges[i];
            group.multiplicity = j - i;
            for (auto k = i + 1; k < j; ++k)
                group.candidates.push_back(k);
            report.multi_groups.push_back(std::move(group));
        }
        i = j;
    }
    return report;
}

RewireResult rewire_to_simple(MultiEdgeList edges, Rng& rng, RewirePolicy policy) {
    const std::uint64_t m = edges.size();
    RewireResult result;
    std::uint64_t multiplier = 1;

    for (;;) {
        const auto report = find_illegal(edges);
        if (report.clean())
            break;
        if (result.rounds >= policy.max_rounds)
            throw LasVegasFailure("rewiring round limit exceeded", report.defect_count());
        if (m < 2)
            throw LasVegasFailure("graph too small to rewire", report.defect_count());

        std::vector<edge_id> targets = report.self_loops;
        for (const auto& g : report.multi_groups)
            targets.insert(targets.end(), g.candidates.begin(), g.candidates.end());

        std::vector<SwapDescriptor> swaps;
        for (const auto id : targets) {
            for (std::uint64_t rep = 0; rep < multiplier; ++rep) {
                auto partner = rng.below(m);
                while (partner == id)
                    partner = rng.below(m);
                swaps.push_back(SwapDescriptor{id, partner, rng.coin()});
            }
        }
        if (policy.pad_with_random_swaps) {
            const std::uint64_t floor_ops = m / 10;
            while (swaps.size() < floor_ops) {
                const auto a = rng.below(m);
                auto b = rng.below(m);
                while (b == a)
                    b = rng.below(m);
                swaps.push_back(SwapDescriptor{a, b, rng.coin()});
            }
        }

        RunConfig cfg;
        cfg.run_size = swaps.size(); // one run per round
        edges = apply_swaps_multigraph(std::move(edges), swaps, cfg);
        result.rounds += 1;
        multiplier *= 2;
    }

    result.edges = std::move(edges);
    return result;
}

RewireResult rewire_to_simple(MultiEdgeList edges, std::uint64_t seed,
                              RewirePolicy policy) {
    Rng rng(seed);
    return rewire_to_simple(std::move(edges), rng, policy);
}

} // namespace lfrgen
