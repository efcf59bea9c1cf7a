#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lfrgen/em/memory.hpp"
#include "lfrgen/em/min_pq.hpp"
#include "lfrgen/em/sequence.hpp"
#include "lfrgen/em/sorter.hpp"
#include "lfrgen/em/tfp.hpp"
#include "lfrgen/random/rng.hpp"

using namespace lfrgen;

TEST(Sorter, ThreeElements) {
    em::Sorter<int> sorter;
    sorter.push(3);
    sorter.push(1);
    sorter.push(2);
    sorter.sort();
    std::vector<int> out = sorter.drain();
    EXPECT_EQ(out, (std::vector<int>{1, 2, 3}));
}

TEST(Sorter, EmptyStream) {
    em::Sorter<int> sorter;
    sorter.sort();
    EXPECT_TRUE(sorter.empty());
    EXPECT_EQ(sorter.size(), 0u);
}

TEST(Sorter, UsageErrors) {
    em::Sorter<int> sorter;
    EXPECT_THROW(sorter.empty(), UsageError);
    sorter.push(1);
    sorter.sort();
    EXPECT_THROW(sorter.push(2), UsageError);
    EXPECT_THROW(sorter.sort(), UsageError);
}

TEST(Sorter, RewindRestartsStream) {
    em::Sorter<int> sorter;
    for (int x : {5, 4, 9, 1})
        sorter.push(x);
    sorter.sort();
    auto first = sorter.drain();
    sorter.rewind();
    auto second = sorter.drain();
    EXPECT_EQ(first, second);
}

TEST(Sorter, MillionKeysUnderMebibyteBudgetMatchesInMemorySort) {
    auto ctx = std::make_shared<em::MemoryContext>(em::MemoryBudget{1 << 20});
    em::Sorter<std::uint64_t> sorter(std::less<std::uint64_t>{}, ctx);

    Rng rng(42);
    std::vector<std::uint64_t> reference;
    reference.reserve(1000000);
    for (int i = 0; i < 1000000; ++i) {
        const auto x = rng.next_u64();
        reference.push_back(x);
        sorter.push(x);
    }
    std::sort(reference.begin(), reference.end());

    sorter.sort();
    std::size_t i = 0;
    for (; !sorter.empty(); ++sorter, ++i)
        ASSERT_EQ(*sorter, reference[i]);
    EXPECT_EQ(i, reference.size());
}

TEST(Sorter, StableUnderSpill) {
    struct Rec {
        std::uint32_t key;
        std::uint32_t seq;
    };
    struct KeyOnly {
        bool operator()(const Rec& a, const Rec& b) const { return a.key < b.key; }
    };
    auto ctx = std::make_shared<em::MemoryContext>(em::MemoryBudget{4096});
    em::Sorter<Rec, KeyOnly> sorter(KeyOnly{}, ctx);
    Rng rng(7);
    for (std::uint32_t i = 0; i < 50000; ++i)
        sorter.push(Rec{static_cast<std::uint32_t>(rng.below(50)), i});
    sorter.sort();
    Rec prev{0, 0};
    bool first = true;
    for (; !sorter.empty(); ++sorter) {
        const Rec cur = *sorter;
        if (!first && cur.key == prev.key)
            EXPECT_LT(prev.seq, cur.seq); // insertion order on ties
        if (!first)
            EXPECT_LE(prev.key, cur.key);
        prev = cur;
        first = false;
    }
}

TEST(Sorter, PermutationPropertyRandomBudgets) {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint64_t budget = 4096 + gen() % 100000;
        auto ctx = std::make_shared<em::MemoryContext>(em::MemoryBudget{budget});
        em::Sorter<std::uint64_t> sorter(std::less<std::uint64_t>{}, ctx);
        std::vector<std::uint64_t> input;
        const auto count = gen() % 20000;
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto x = gen() % 1000;
            input.push_back(x);
            sorter.push(x);
        }
        sorter.sort();
        auto out = sorter.drain();
        ASSERT_TRUE(std::is_sorted(out.begin(), out.end()));
        std::sort(input.begin(), input.end());
        ASSERT_EQ(out, input);
    }
}

TEST(Sequence, ReadEqualsAppendOrderAcrossSpill) {
    auto ctx = std::make_shared<em::MemoryContext>(em::MemoryBudget{4096});
    em::Sequence<std::uint64_t> seq(ctx);
    std::vector<std::uint64_t> reference;
    Rng rng(11);
    for (int i = 0; i < 30000; ++i) {
        const auto x = rng.next_u64();
        seq.push(x);
        reference.push_back(x);
    }
    seq.finish();
    for (int round = 0; round < 2; ++round) {
        seq.rewind();
        std::size_t i = 0;
        for (; !seq.empty(); ++seq, ++i)
            ASSERT_EQ(*seq, reference[i]);
        EXPECT_EQ(i, reference.size());
    }
}

TEST(BitStream, RoundTrip) {
    em::BitStream bits;
    std::vector<bool> reference;
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const bool b = rng.coin();
        bits.push(b);
        reference.push_back(b);
    }
    bits.finish();
    for (bool expected : reference)
        EXPECT_EQ(bits.next(), expected);
    EXPECT_TRUE(bits.empty());
}

TEST(MinPQ, DrainOrderNonDecreasing) {
    em::MinPQ<std::uint64_t, int> pq;
    Rng rng(9);
    for (int i = 0; i < 10000; ++i)
        pq.push(rng.below(500), i);
    std::uint64_t prev = 0;
    while (!pq.empty()) {
        EXPECT_GE(pq.top_priority(), prev);
        prev = pq.top_priority();
        pq.pop();
    }
}

TEST(MinPQ, StableOnEqualPriorities) {
    em::MinPQ<int, int> pq;
    for (int i = 0; i < 100; ++i)
        pq.push(7, i);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(pq.top_payload(), i);
        pq.pop();
    }
}

TEST(MinPQ, SpillsUnderTinyBudget) {
    auto ctx = std::make_shared<em::MemoryContext>(em::MemoryBudget{4096});
    em::MinPQ<std::uint64_t, std::uint64_t> pq(ctx);
    Rng rng(13);
    std::vector<std::uint64_t> reference;
    for (int i = 0; i < 40000; ++i) {
        const auto p = rng.below(1000000);
        pq.push(p, p);
        reference.push_back(p);
    }
    std::sort(reference.begin(), reference.end());
    for (const auto expected : reference) {
        ASSERT_EQ(pq.top_priority(), expected);
        pq.pop();
    }
    EXPECT_TRUE(pq.empty());
}

TEST(Tfp, DirectDelivery) {
    em::TimeForwardChannel<char> chan;
    chan.send(2, 'x');
    chan.send(3, 'y');
    chan.send(3, 'z');
    EXPECT_TRUE(chan.receive(1).empty());
    EXPECT_EQ(chan.receive(2), std::vector<char>{'x'});
    auto three = chan.receive(3);
    std::sort(three.begin(), three.end());
    EXPECT_EQ(three, (std::vector<char>{'y', 'z'}));
}

TEST(Tfp, NoMessagesMeansEmptyEverywhere) {
    em::TimeForwardChannel<int> chan;
    for (std::uint64_t e = 0; e < 10; ++e)
        EXPECT_TRUE(chan.receive(e).empty());
}

TEST(Tfp, SendToPastIsUsageError) {
    em::TimeForwardChannel<int> chan;
    chan.receive(5);
    EXPECT_THROW(chan.send(4, 1), UsageError);
    EXPECT_THROW(chan.send(5, 1), UsageError);
    chan.send(6, 1);
}

TEST(Tfp, RandomDagMatchesAdjacencyOracle) {
    std::mt19937_64 gen(17);
    const std::uint64_t events = 100;
    std::vector<std::vector<int>> oracle(events);
    std::vector<std::pair<std::uint64_t, std::pair<std::uint64_t, int>>> sends;
    for (int i = 0; i < 500; ++i) {
        const auto from = gen() % (events - 1);
        const auto to = from + 1 + gen() % (events - from - 1);
        sends.push_back({from, {to, i}});
        oracle[to].push_back(i);
    }
    std::sort(sends.begin(), sends.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    em::TimeForwardChannel<int> chan;
    std::size_t cursor = 0;
    for (std::uint64_t e = 0; e < events; ++e) {
        auto got = chan.receive(e);
        std::sort(got.begin(), got.end());
        auto expected = oracle[e];
        std::sort(expected.begin(), expected.end());
        EXPECT_EQ(got, expected) << "event " << e;
        while (cursor < sends.size() && sends[cursor].first == e) {
            chan.send(sends[cursor].second.first, sends[cursor].second.second);
            ++cursor;
        }
    }
}
