#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "mgcount/mgcount.hpp"
#include "oracle_helpers.hpp"

using namespace mgcount;

TEST_CASE("total pairing counts") {
    CHECK(total_pairings(0) == 1);
    CHECK(total_pairings(4) == 3);
    CHECK(total_pairings(12) == 10395);
    CHECK(total_pairings(3) == 0);
}

TEST_CASE("projection collapses cells to vertices") {
    SECTION("within-cell pair becomes a loop") {
        pairing p{{2}, {{1, 2}}};
        auto g = project(p);
        CHECK(g.loop(0) == 1);
        CHECK(g.degree(0) == 2);
    }
    SECTION("two cross pairs become a double link") {
        pairing p{{2, 2}, {{1, 3}, {2, 4}}};
        auto g = project(p);
        CHECK(g.get(0, 1) == 2);
    }
    SECTION("two within-cell pairs become two loops") {
        pairing p{{2, 2}, {{1, 2}, {3, 4}}};
        auto g = project(p);
        CHECK(g.loop(0) == 1);
        CHECK(g.loop(1) == 1);
        CHECK(g.get(0, 1) == 0);
    }
}

TEST_CASE("pairing validation rejects malformed inputs") {
    CHECK_THROWS_AS((pairing{{2, 1}, {{1, 2}}}).validate(), parse_error);     // odd
    CHECK_THROWS_AS((pairing{{2, 2}, {{1, 2}}}).validate(), parse_error);     // uncovered
    CHECK_THROWS_AS((pairing{{2, 2}, {{1, 2}, {2, 3}}}).validate(), parse_error);
    CHECK_THROWS_AS((pairing{{2, 2}, {{1, 2}, {3, 9}}}).validate(), parse_error);
    CHECK_NOTHROW((pairing{{2, 2}, {{1, 3}, {2, 4}}}).validate());
}

TEST_CASE("per-multigraph pairing counts") {
    multigraph k4(4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.set(i, j, 1);
    CHECK(pairings_of(k4) == 1296);

    multigraph one_loop(1);
    one_loop.set(0, 0, 1);
    CHECK(pairings_of(one_loop) == 1);

    multigraph dlink(2);
    dlink.set(0, 1, 2);
    CHECK(pairings_of(dlink) == 2);
}

TEST_CASE("pairings_of agrees with exhaustive projection counting") {
    std::mt19937_64 rng(7301);
    for (int trial = 0; trial < 6; ++trial) {
        auto k = oracle::random_degrees(rng, 5, 4, 10);
        std::map<multigraph, Int> hits;
        oracle::for_each_pairing(k.degrees(),
                                 [&](const pairing& p) { ++hits[project(p)]; });
        for (const auto& [g, cnt] : hits) CHECK(pairings_of(g) == cnt);
    }
}

TEST_CASE("partition identity over all multigraphs with free multiplicities") {
    std::mt19937_64 rng(7302);
    auto all = multiplicity_set::all();
    for (int trial = 0; trial < 15; ++trial) {
        auto k = oracle::random_degrees(rng, 6, 5, 12);
        auto [graphs, truncated] = enumerate_multigraphs(k, all, all, 2000000);
        REQUIRE_FALSE(truncated);
        Int sum = 0;
        for (const auto& g : graphs) sum += pairings_of(g);
        CHECK(sum == total_pairings(int_to_ll(k.total(), "M")));
    }
}

TEST_CASE("class weights against the exhaustive pairing tally") {
    degree_sequence k({2, 2});
    CHECK(w_weight(k, {0, 1, 0}) == 4);

    auto tally = oracle::tally_pairing_classes(k);
    // the three pairings at M = 4: two project to the double link, one to loops
    CHECK(tally.total == 3);
    CHECK(tally.classes.at({0, 1, 0}) == 2);
    CHECK(tally.classes.at({2, 0, 0}) == 1);

    // w(l,d,t) = 2^{l+d} 6^t |C_{l,d,t}| on a richer instance
    degree_sequence k2({3, 3, 2, 2});
    auto tally2 = oracle::tally_pairing_classes(k2);
    for (const auto& [key, cnt] : tally2.classes) {
        auto [l, d, t] = key;
        CHECK(w_weight(k2, {l, d, t}) ==
              cnt * ipow(2, static_cast<unsigned long long>(l + d)) *
                  ipow(6, static_cast<unsigned long long>(t)));
    }
}

TEST_CASE("sampler is deterministic, valid, and degree-preserving") {
    std::vector<int> k{3, 3, 2, 2, 2};
    auto p1 = sample_pairing(k, 42);
    auto p2 = sample_pairing(k, 42);
    CHECK(p1.pairs == p2.pairs);
    CHECK_NOTHROW(p1.validate());
    CHECK(project(p1).degrees() == k);
    auto p3 = sample_pairing(k, 43);
    CHECK(project(p3).degrees() == k);
    CHECK_THROWS_AS(sample_pairing({1, 1, 1}, 1), odd_total_degree);
}

TEST_CASE("sampler is uniform over the three pairings of two 2-cells") {
    std::map<std::vector<std::pair<int, int>>, long long> freq;
    const int reps = 30000;
    for (int s = 0; s < reps; ++s) {
        auto p = sample_pairing({2, 2}, 90000 + static_cast<std::uint64_t>(s));
        auto key = p.pairs;
        std::sort(key.begin(), key.end());
        ++freq[key];
    }
    REQUIRE(freq.size() == 3);
    // each frequency within 3 sigma of reps/3; sigma = sqrt(reps * (1/3)(2/3))
    double sigma = std::sqrt(reps / 3.0 * 2.0 / 3.0);
    for (const auto& [key, cnt] : freq)
        CHECK(std::abs(cnt - reps / 3.0) <= 3.5 * sigma);
}

TEST_CASE("sampled class frequencies track the exact weights") {
    degree_sequence k({3, 3, 3, 3});
    Int pool = total_pairings(12);
    std::map<std::tuple<long long, long long, long long>, long long> freq;
    const int reps = 100000;
    long long outside = 0;
    for (int s = 0; s < reps; ++s) {
        auto p = sample_pairing(k.degrees(), 7777000 + static_cast<std::uint64_t>(s));
        auto sig = oracle::classify(project(p));
        if (sig)
            ++freq[{sig->loops1, sig->links2, sig->links3}];
        else
            ++outside;
    }
    for (const auto& [key, cnt] : freq) {
        auto [l, d, t] = key;
        // class probability is |C|/pool; w carries the extra 2^{l+d} 6^t
        Int scale = Int(1) << (l + d);
        for (long long i = 0; i < t; ++i) scale *= 6;
        double prob = static_cast<double>(to_real(Rat(w_weight(k, {l, d, t}), pool * scale)));
        double se = std::sqrt(reps * prob * (1 - prob));
        CHECK(std::abs(cnt - reps * prob) <= 4 * se + 1);
    }
}
