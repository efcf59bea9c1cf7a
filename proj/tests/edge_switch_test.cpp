#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lfrgen/es/edge_switch.hpp"
#include "lfrgen/graph.hpp"

using namespace lfrgen;

namespace {

EdgeList sorted(EdgeList e) {
    std::sort(e.begin(), e.end());
    return e;
}

// Random connected-ish simple graph as a sorted edge list.
EdgeList random_simple_graph(std::mt19937_64& gen, std::size_t n, std::size_t m_target) {
    std::set<std::pair<node_id, node_id>> edges;
    std::size_t guard = 0;
    while (edges.size() < m_target && guard++ < 50 * m_target) {
        node_id u = gen() % n;
        node_id v = gen() % n;
        if (u == v)
            continue;
        if (u > v)
            std::swap(u, v);
        edges.insert({u, v});
    }
    EdgeList out;
    for (const auto& [u, v] : edges)
        out.push_back(Edge{u, v});
    return out;
}

MultiEdgeList random_multigraph(std::mt19937_64& gen, std::size_t n, std::size_t m) {
    MultiEdgeList out;
    for (std::size_t i = 0; i < m; ++i) {
        node_id u = gen() % n;
        node_id v = gen() % n; // loops and duplicates intended
        out.push_back(Edge{u, v}.normalized());
    }
    std::sort(out.begin(), out.end());
    return out;
}

DegreeSequence degrees_with_loops(const MultiEdgeList& edges, node_id n) {
    DegreeSequence deg(n, 0);
    for (const auto& e : edges) {
        deg[e.u] += 1;
        deg[e.v] += 1; // loops count twice
    }
    return deg;
}

} // namespace

TEST(SwappedEdges, DirectionTable) {
    EXPECT_EQ(swapped_edges({1, 2}, {3, 4}, false),
              (std::pair<Edge, Edge>{{1, 3}, {2, 4}}));
    EXPECT_EQ(swapped_edges({1, 2}, {3, 4}, true),
              (std::pair<Edge, Edge>{{1, 4}, {2, 3}}));
    // Shared endpoint forces a self-loop the caller must detect.
    const auto [a, b] = swapped_edges({1, 2}, {1, 3}, false);
    EXPECT_TRUE(a.is_loop());
    EXPECT_EQ(b, (Edge{2, 3}));
}

TEST(SequentialSwaps, LegalSwapExecutes) {
    const EdgeList edges{{1, 2}, {3, 4}};
    const std::vector<SwapDescriptor> swaps{{0, 1, true}};
    EXPECT_EQ(apply_swaps_sequential(edges, swaps), (EdgeList{{1, 4}, {2, 3}}));
}

TEST(SequentialSwaps, MultiEdgeIsSkipped) {
    // 1-3 exists, so switching [1,2] & [3,4] into {1,3},{2,4} must skip.
    const EdgeList edges{{1, 2}, {1, 3}, {3, 4}};
    const std::vector<SwapDescriptor> swaps{{0, 2, false}};
    EXPECT_EQ(apply_swaps_sequential(edges, swaps), edges);
}

TEST(SequentialSwaps, EmptySequenceIsIdentity) {
    const EdgeList edges{{0, 1}, {2, 5}};
    EXPECT_EQ(apply_swaps_sequential(edges, {}), edges);
}

TEST(SequentialSwaps, Validation) {
    const EdgeList edges{{1, 2}, {3, 4}};
    EXPECT_THROW(apply_swaps_sequential(edges, {{0, 2, false}}), ValidationError);
    EXPECT_THROW(apply_swaps_sequential(edges, {{1, 1, false}}), ValidationError);
    EXPECT_THROW(apply_swaps_sequential(EdgeList{{2, 1}}, {}), ValidationError);
}

TEST(DrawRandomSwaps, BasicProperties) {
    auto swaps = draw_random_swaps(2, 50, 7);
    for (const auto& s : swaps) {
        EXPECT_NE(s.a, s.b);
        EXPECT_LT(s.a, 2u);
        EXPECT_LT(s.b, 2u);
    }
    EXPECT_EQ(draw_random_swaps(10, 20, 3), draw_random_swaps(10, 20, 3));
    EXPECT_THROW(draw_random_swaps(1, 5, 3), ValidationError);
}

TEST(DrawRandomSwaps, IdFrequencies) {
    const std::uint64_t m = 100, k = 100000;
    auto swaps = draw_random_swaps(m, k, 11);
    std::vector<std::uint64_t> freq(m, 0);
    for (const auto& s : swaps) {
        freq[s.a] += 1;
        freq[s.b] += 1;
    }
    const double expected = 2.0 * static_cast<double>(k) / static_cast<double>(m);
    const double sigma = std::sqrt(expected * (1.0 - 1.0 / static_cast<double>(m)));
    for (const auto f : freq)
        EXPECT_NEAR(static_cast<double>(f), expected, 3 * sigma);
}

TEST(PipelineSwaps, SharedSourceIdSeesPredecessorResult) {
    const EdgeList edges{{1, 2}, {3, 4}, {5, 6}};
    const std::vector<SwapDescriptor> swaps{{0, 1, false}, {0, 2, false}};
    const auto expected = apply_swaps_sequential(edges, swaps);
    const auto got = apply_swaps(edges, swaps, RunConfig{swaps.size()});
    EXPECT_EQ(got, expected);
}

TEST(PipelineSwaps, OnlyIllegalSwapsLeaveGraphUnchanged) {
    const EdgeList edges{{1, 2}, {1, 3}, {2, 3}}; // triangle: every swap illegal
    auto swaps = draw_random_swaps(3, 50, 17);
    EXPECT_EQ(apply_swaps(edges, swaps, RunConfig{10}), edges);
}

TEST(PipelineSwaps, OracleEquivalenceRandomInstances) {
    std::mt19937_64 gen(2025);
    int nontrivial = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 4 + gen() % 97;
        const std::size_t m_target = 2 + gen() % 299;
        const auto edges = random_simple_graph(gen, n, m_target);
        if (edges.size() < 2)
            continue;
        const std::uint64_t m = edges.size();
        const std::uint64_t k = 1 + gen() % (10 * m);
        const auto swaps = draw_random_swaps(m, k, gen());

        for (const std::uint64_t r :
             {std::uint64_t{1}, std::max<std::uint64_t>(1, m / 8),
              std::max<std::uint64_t>(1, m / 2), k}) {
            const auto expected =
                apply_swaps_sequential(edges, swaps, RunConfig{r});
            const auto got = apply_swaps(edges, swaps, RunConfig{r});
            ASSERT_EQ(got, expected)
                << "n=" << n << " m=" << m << " k=" << k << " r=" << r;
        }
        ++nontrivial;
    }
    EXPECT_GE(nontrivial, 300);
}

TEST(PipelineSwaps, DegreesAndSimplicityPreserved) {
    std::mt19937_64 gen(4242);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 10 + gen() % 50;
        const auto edges = random_simple_graph(gen, n, 3 * n);
        if (edges.size() < 2)
            continue;
        const auto swaps = draw_random_swaps(edges.size(), 5 * edges.size(), gen());
        const auto out = apply_swaps(edges, swaps);
        ASSERT_TRUE(is_simple_edge_list(out));
        ASSERT_EQ(degrees_of(out, n), degrees_of(edges, n));
    }
}

TEST(PipelineSwaps, SlotExchangeMetamorphic) {
    // (a, b, d) must behave exactly like (b, a, d).
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 40; ++trial) {
        const auto edges = random_simple_graph(gen, 30, 60);
        if (edges.size() < 2)
            continue;
        auto swaps = draw_random_swaps(edges.size(), 4 * edges.size(), gen());
        auto flipped = swaps;
        for (auto& s : flipped)
            std::swap(s.a, s.b);
        ASSERT_EQ(apply_swaps(edges, swaps), apply_swaps(edges, flipped));
    }
}

TEST(PipelineSwaps, ThreeEdgeListScansPerRun) {
    std::mt19937_64 gen(31);
    const auto edges = random_simple_graph(gen, 40, 100);
    const auto swaps = draw_random_swaps(edges.size(), 4 * edges.size(), 5);
    RunStats stats;
    apply_swaps(edges, swaps, RunConfig{edges.size() / 8}, &stats);
    EXPECT_GT(stats.runs, 1u);
    EXPECT_EQ(stats.edge_list_scans, 3 * stats.runs);
}

TEST(MultigraphSwaps, LoopRemoval) {
    const MultiEdgeList edges{{1, 1}, {2, 3}};
    const std::vector<SwapDescriptor> swaps{{0, 1, false}};
    const auto expected = MultiEdgeList{{1, 2}, {1, 3}};
    EXPECT_EQ(apply_swaps_sequential_multigraph(edges, swaps), expected);
    EXPECT_EQ(apply_swaps_multigraph(edges, swaps), expected);
    // Degrees (loops double) preserved: node1: 2, node2: 1, node3: 1.
    EXPECT_EQ(degrees_with_loops(expected, 4), degrees_with_loops(edges, 4));
}

TEST(MultigraphSwaps, MultiplicityDropsByTransfer) {
    const MultiEdgeList edges{{1, 2}, {1, 2}, {3, 4}};
    const std::vector<SwapDescriptor> swaps{{0, 2, true}};
    const auto expected = MultiEdgeList{{1, 2}, {1, 4}, {2, 3}};
    EXPECT_EQ(apply_swaps_sequential_multigraph(edges, swaps), expected);
    EXPECT_EQ(apply_swaps_multigraph(edges, swaps), expected);
}

TEST(MultigraphSwaps, ResultEqualToSurvivingCopyIsSkipped) {
    // Swapping [1,2] with [1,2] (other copy) would produce [1,2] twice or
    // loops; swapping [3,4] into an existing [1,2] value is also skipped.
    const MultiEdgeList edges{{1, 2}, {1, 2}, {1, 3}, {2, 4}};
    // {1,3} & {2,4} -> {1,2},{3,4} with d=false: {1,2} survives twice.
    const std::vector<SwapDescriptor> swaps{{2, 3, false}};
    EXPECT_EQ(apply_swaps_sequential_multigraph(edges, swaps), edges);
    EXPECT_EQ(apply_swaps_multigraph(edges, swaps), edges);
}

TEST(MultigraphSwaps, OracleEquivalenceRandomInstances) {
    std::mt19937_64 gen(909);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 3 + gen() % 40;
        const std::size_t m = 2 + gen() % 150;
        const auto edges = random_multigraph(gen, n, m);
        const auto k = 1 + gen() % (6 * m);
        const auto swaps = draw_random_swaps(m, k, gen());
        for (const std::uint64_t r :
             {std::uint64_t{1}, std::max<std::uint64_t>(1, m / 8), k}) {
            const auto expected =
                apply_swaps_sequential_multigraph(edges, swaps, RunConfig{r});
            const auto got = apply_swaps_multigraph(edges, swaps, RunConfig{r});
            ASSERT_EQ(got, expected)
                << "n=" << n << " m=" << m << " k=" << k << " r=" << r;
        }
        // Degrees are invariant even on non-simple inputs.
        ASSERT_EQ(degrees_with_loops(apply_swaps_multigraph(edges, swaps), n),
                  degrees_with_loops(edges, n));
    }
}

TEST(DependencyStats, IndependentSwapsSimulateOneConfiguration) {
    const EdgeList edges{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
    const std::vector<SwapDescriptor> swaps{{0, 1, false}, {2, 3, true}};
    const auto stats = dependency_stats(edges, swaps, RunConfig{swaps.size()});
    EXPECT_EQ(stats.fraction_with(1), 1.0);
}

TEST(DependencyStats, RunSizeOneHasNoIntraRunDependencies) {
    std::mt19937_64 gen(55);
    const auto edges = random_simple_graph(gen, 30, 80);
    const auto swaps = draw_random_swaps(edges.size(), 3 * edges.size(), 9);
    const auto stats = dependency_stats(edges, swaps, RunConfig{1});
    EXPECT_EQ(stats.fraction_with(1), 1.0);
}

TEST(DependencyStats, SharedIdsProduceExtraConfigurations) {
    const EdgeList edges{{1, 2}, {3, 4}, {5, 6}};
    const std::vector<SwapDescriptor> swaps{{0, 1, false}, {0, 2, false}};
    const auto stats = dependency_stats(edges, swaps, RunConfig{swaps.size()});
    EXPECT_EQ(stats.configuration_histogram.at(1), 1u);
    EXPECT_EQ(stats.configuration_histogram.at(2), 1u);
}
