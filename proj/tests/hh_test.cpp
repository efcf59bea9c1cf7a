#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "lfrgen/hh/havel_hakimi.hpp"
#include "lfrgen/random/powerlaw.hpp"
#include "reference_impls.hpp"

using namespace lfrgen;
namespace ref = lfrgen::testing;

namespace {

DegreeSequence realized_degrees(const EdgeList& edges, std::size_t n) {
    DegreeSequence deg(n, 0);
    for (const auto& e : edges) {
        deg.at(e.u - 1) += 1; // 1-based ids
        deg.at(e.v - 1) += 1;
    }
    return deg;
}

bool simple_sorted(const EdgeList& edges) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].u >= edges[i].v)
            return false;
        if (i && !(edges[i - 1] < edges[i]))
            return false;
    }
    return true;
}

} // namespace

TEST(GroupList, CompactExamples) {
    const auto list = GroupList::compact({1, 1, 2, 2, 3, 3});
    EXPECT_EQ(list.snapshot(), (std::vector<DegreeGroup>{{1, 2, 1}, {3, 2, 2}, {5, 2, 3}}));
    EXPECT_EQ(GroupList::compact({5}).snapshot(),
              (std::vector<DegreeGroup>{{1, 1, 5}}));
    EXPECT_EQ(GroupList::compact({2, 2, 2}).snapshot(),
              (std::vector<DegreeGroup>{{1, 3, 2}}));
}

TEST(GroupList, CompactValidation) {
    EXPECT_THROW(GroupList::compact({2, 1}), ValidationError);
    EXPECT_THROW(GroupList::compact({0, 1}), ValidationError);
}

TEST(GroupList, CompactCoversIdsContiguously) {
    const auto list = GroupList::compact({1, 1, 4, 4, 4, 9});
    const auto snap = list.snapshot();
    ASSERT_EQ(snap.size(), 3u);
    EXPECT_EQ(snap[0].first_node, 1u);
    EXPECT_EQ(snap[0].first_node + snap[0].count, snap[1].first_node);
    EXPECT_EQ(snap[1].first_node + snap[1].count, snap[2].first_node);
}

TEST(HavelHakimi, ListStateTrace) {
    // D = (1,1,2,2,3,3): the four successive list states after the first
    // four extractions, then the empty list.
    HavelHakimiGenerator gen(DegreeSequence{1, 1, 2, 2, 3, 3});
    std::vector<std::vector<DegreeGroup>> states;
    gen.set_iteration_observer(
        [&](const std::vector<DegreeGroup>& s) { states.push_back(s); });
    EdgeList edges;
    Edge e;
    while (gen.next(e))
        edges.push_back(e);

    ASSERT_GE(states.size(), 4u);
    EXPECT_EQ(states[0], (std::vector<DegreeGroup>{{2, 1, 1}, {3, 3, 2}, {6, 1, 3}}));
    EXPECT_EQ(states[1], (std::vector<DegreeGroup>{{3, 4, 2}}));
    EXPECT_EQ(states[2], (std::vector<DegreeGroup>{{4, 2, 1}, {6, 1, 2}}));
    EXPECT_EQ(states[3], (std::vector<DegreeGroup>{{5, 2, 1}}));

    EXPECT_TRUE(gen.graphical());
    const EdgeList expected{{1, 5}, {2, 6}, {3, 4}, {3, 5}, {4, 6}, {5, 6}};
    EXPECT_EQ(edges, expected);
}

TEST(HavelHakimi, TriangleSequence) {
    const auto result = hh_edges({2, 2, 2});
    EXPECT_TRUE(result.graphical);
    EXPECT_EQ(result.edges, (EdgeList{{1, 2}, {1, 3}, {2, 3}}));
}

TEST(HavelHakimi, OddSumNotGraphical) {
    const auto result = hh_edges({1, 1, 1});
    EXPECT_FALSE(result.graphical);
    EXPECT_EQ(result.unmet, 1u);
}

TEST(HavelHakimi, RealizesDegreesExactlyWhenGraphical) {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + gen() % 30;
        DegreeSequence d(n);
        for (auto& x : d)
            x = 1 + gen() % std::min<std::size_t>(n - 1, 8);
        std::sort(d.begin(), d.end());
        const auto result = hh_edges(d);
        ASSERT_TRUE(simple_sorted(result.edges));
        if (result.graphical) {
            ASSERT_EQ(realized_degrees(result.edges, n), d);
        } else {
            // Dropped half-edges are exactly the degree shortfall.
            const auto got = realized_degrees(result.edges, n);
            std::uint64_t missing = 0;
            for (std::size_t i = 0; i < n; ++i) {
                ASSERT_LE(got[i], d[i]);
                missing += d[i] - got[i];
            }
            ASSERT_EQ(missing, result.unmet);
        }
    }
}

TEST(HavelHakimi, MatchesNaiveGroupImplementation) {
    std::mt19937_64 gen(99);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + gen() % 24;
        DegreeSequence d(n);
        for (auto& x : d)
            x = 1 + gen() % std::min<std::size_t>(n + 1, 9);
        std::sort(d.begin(), d.end());

        const auto naive = ref::naive_group_hh(d);

        HavelHakimiGenerator prod(d);
        std::vector<std::vector<DegreeGroup>> states;
        prod.set_iteration_observer(
            [&](const std::vector<DegreeGroup>& s) { states.push_back(s); });
        EdgeList edges;
        Edge e;
        while (prod.next(e))
            edges.push_back(e);

        ASSERT_EQ(edges, naive.edges) << "trial " << trial;
        ASSERT_EQ(prod.unmet(), naive.unmet);
        ASSERT_EQ(states.size(), naive.states.size());
        for (std::size_t i = 0; i < states.size(); ++i)
            ASSERT_EQ(states[i], naive.states[i]) << "trial " << trial << " iter " << i;
    }
}

TEST(HavelHakimi, GraphicalityMatchesErdosGallaiExhaustive) {
    // All non-decreasing positive sequences with n <= 7, entries <= 6.
    for (std::size_t n = 1; n <= 7; ++n) {
        DegreeSequence d(n, 1);
        for (;;) {
            if (std::is_sorted(d.begin(), d.end()))
                ASSERT_EQ(is_graphical(d), ref::erdos_gallai_graphical(d))
                    << ::testing::PrintToString(d);
            std::size_t i = 0;
            while (i < n && d[i] == 6) {
                d[i] = 1;
                ++i;
            }
            if (i == n)
                break;
            d[i] += 1;
        }
    }
}

TEST(HavelHakimi, KnownGraphicalCalls) {
    EXPECT_TRUE(is_graphical({3, 3, 3, 3}));   // K4
    EXPECT_FALSE(is_graphical({1, 3}));        // degree exceeds n - 1
}

TEST(HavelHakimi, GroupCountNeverMoreThanDoubles) {
    std::mt19937_64 gen(1234);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 10 + gen() % 200;
        DegreeSequence d(n);
        for (auto& x : d)
            x = 1 + gen() % (n / 2);
        std::sort(d.begin(), d.end());
        auto list = GroupList::compact(d);
        const auto initial = list.group_count();
        ExtractionStep step;
        std::uint64_t unmet = 0;
        while (list.advance(step, unmet)) {
            list.check_invariants();
            ASSERT_LE(list.group_count(), 2 * initial);
        }
    }
}

TEST(HavelHakimi, PowerlawPeakGroupCount) {
    // gamma = 2: peak group count stays within 3 sqrt(n).
    const std::uint64_t n = 100000;
    for (std::uint64_t s = 0; s < 9; ++s) {
        const auto d = sample_monotonic_pld(n, PldParams{1, n, 2.0}, 7000 + s);
        HavelHakimiGenerator gen(d);
        Edge e;
        while (gen.next(e)) {
        }
        EXPECT_LE(gen.peak_group_count(),
                  static_cast<std::uint64_t>(3.0 * std::sqrt(static_cast<double>(n))));
    }
}

TEST(HavelHakimi, RealizedDegreesAreGraphicalReduction) {
    std::mt19937_64 gen(321);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + gen() % 20;
        DegreeSequence d(n);
        for (auto& x : d)
            x = 1 + gen() % (n + 2);
        std::sort(d.begin(), d.end());
        auto realized = hh_realized_degrees(d);
        // The realization drops exactly the unmet half-edges and the result
        // matches the emitted graph's degrees.
        const auto result = hh_edges(d);
        DegreeSequence from_edges(n, 0);
        for (const auto& e : result.edges) {
            from_edges[e.u - 1] += 1;
            from_edges[e.v - 1] += 1;
        }
        ASSERT_EQ(realized, from_edges);
    }
}
