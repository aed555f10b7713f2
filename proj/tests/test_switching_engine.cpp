#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "mgcount/mgcount.hpp"
#include "oracle_helpers.hpp"

using namespace mgcount;

namespace {

const multiplicity_set Jall = multiplicity_set::all();

multigraph build(int n, const std::vector<std::tuple<int, int, long long>>& cells) {
    multigraph g(n);
    for (auto [i, j, v] : cells) g.set(i, j, v);
    return g;
}

switch_context ctx_all(const multigraph& q) {
    return switch_context(degree_sequence(q.degrees()), Jall, Jall);
}

// Public-API recount of enumerate_moves: try every raw vertex tuple.  Returns
// -1 when the tuple space is too large to scan.
long long brute_move_count(const multigraph& q, int colour) {
    const size_t len = move_seq_length(colour);
    const int n = q.n();
    double space = 1;
    for (size_t i = 0; i < len; ++i) space *= n;
    if (space > 3e6) return -1;
    long long count = 0;
    std::vector<int> seq(len);
    std::function<void(size_t)> rec = [&](size_t pos) {
        if (pos == len) {
            try {
                apply_move(q, switching_move{colour, seq});
                ++count;
            } catch (const invalid_move&) {
            }
            return;
        }
        for (int v = 0; v < n; ++v) {
            seq[pos] = v;
            rec(pos + 1);
        }
    };
    rec(0);
    return count;
}

// Every cell changed by the move must avoid the tallied classes: no loop may
// end at multiplicity 1, no link at multiplicity 2 or 3.
void check_modified_cells(const multigraph& q, const multigraph& r) {
    REQUIRE(q.n() == r.n());
    for (int i = 0; i < q.n(); ++i)
        for (int j = i; j < q.n(); ++j) {
            if (q.get(i, j) == r.get(i, j)) continue;
            if (i == j)
                CHECK(r.loop(i) != 1);
            else
                CHECK((r.get(i, j) != 2 && r.get(i, j) != 3));
        }
}

// Full forward exercise of one colour on one graph: count, degree
// preservation, modified-cell closure, and reverse recovery.
void exercise_colour(const multigraph& q, int colour, long long expected_moves) {
    auto ctx = ctx_all(q);
    auto moves = enumerate_moves(q, colour);
    CHECK(static_cast<long long>(moves.size()) == expected_moves);
    long long brute = brute_move_count(q, colour);
    if (brute >= 0) CHECK(brute == expected_moves);
    auto active = active_colour(ctx, q);
    Rat cap = nominal_b(colour, ctx.k);
    for (const auto& m : moves) {
        multigraph r = apply_move(q, m);
        CHECK(r.degrees() == q.degrees());
        check_modified_cells(q, r);
        auto back = reverse_search(ctx, r, colour);
        bool in_pattern = false, in_matches = false;
        for (const auto& hit : back.pattern_matches)
            if (hit.source == q && hit.move == m) in_pattern = true;
        for (const auto& hit : back.matches)
            if (hit.source == q && hit.move == m) in_matches = true;
        CHECK(in_pattern);
        CHECK(in_matches == (active && *active == colour));
        CHECK(Rat(static_cast<long long>(back.pattern_matches.size())) <= cap);
        CHECK(reverse_count(ctx, r, colour) <=
              Int(static_cast<long long>(back.pattern_matches.size())));
    }
}

}  // namespace

TEST_CASE("multiplicity statistics") {
    SECTION("complete graph on four vertices") {
        multigraph k4(4);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) k4.set(i, j, 1);
        auto st = compute_stats(k4);
        CHECK(st.link_count(1) == 6);
        CHECK(st.L == 0);
        CHECK(st.e_plus == 0);
        CHECK(st.e_minus == 0);
        CHECK(st.e_exotic == 0);
        CHECK(st.e1_fraction == 1);
    }
    SECTION("double loop") {
        auto g = build(2, {{0, 0, 2}});
        auto st = compute_stats(g);
        CHECK(st.loop_count(2) == 1);
        CHECK(st.L == 1);
    }
    SECTION("single heavy link at small kmax") {
        auto g = build(2, {{0, 1, 5}});
        auto st = compute_stats(g);
        // cap4 = max{4, ceil(sqrt 5)} = 4, so the E- band 5..3 is empty
        CHECK(st.e_plus == 1);
        CHECK(st.e_minus == 0);
        CHECK(st.link_count(5) == 1);
        CHECK(st.e_exotic == 0);
    }
}

TEST_CASE("threshold values at the cubic instance") {
    auto th = compute_thresholds(degree_sequence({3, 3, 3, 3}));
    CHECK(th.n1 == 960);
    CHECK(th.n2 == 960);
    CHECK(th.n3 == 80);
}

TEST_CASE("thresholds of the edgeless instance") {
    // M = 0 must not reach the M-denominator ratios; all caps collapse to zero
    // and the lone empty graph sits in every region.
    auto th = compute_thresholds(degree_sequence({0, 0, 0}));
    CHECK(th.m == 0);
    CHECK(th.n1 == 0);
    CHECK(th.n2 == 0);
    CHECK(th.n3 == 0);
    CHECK(th.cap4 == 4);
    auto J01 = multiplicity_set::of({0, 1});
    auto Js0 = multiplicity_set::of({0});
    multigraph empty(3);
    CHECK(in_g0(empty, J01, Js0));
    CHECK(in_g0_minus_y(empty, J01, Js0, th));
    CHECK(in_z(empty, J01, Js0, th));
}

TEST_CASE("active colour selection") {
    auto J01 = multiplicity_set::of({0, 1});
    auto Js0 = multiplicity_set::of({0});

    SECTION("simple graphs activate nothing") {
        multigraph k4(4);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) k4.set(i, j, 1);
        switch_context ctx(degree_sequence({3, 3, 3, 3}), J01, Js0);
        CHECK_FALSE(active_colour(ctx, k4).has_value());
        CHECK(in_z(k4, J01, Js0, ctx.th));
    }

    SECTION("a double loop fires colour 9 when the big thresholds are idle") {
        auto q = build(5, {{0, 0, 2}, {1, 2, 1}, {3, 4, 1}});
        switch_context ctx(degree_sequence({4, 1, 1, 1, 1}), J01, Js0);
        auto c = active_colour(ctx, q);
        REQUIRE(c.has_value());
        CHECK(*c == 9);
    }

    SECTION("membership violations are errors") {
        auto q = build(2, {{0, 1, 2}});
        switch_context ctx(degree_sequence({2, 2}), J01, Js0);
        CHECK_THROWS_AS(active_colour(ctx, q), not_in_g0);
        multigraph wrong(2);
        wrong.set(0, 1, 1);
        CHECK_THROWS_AS(active_colour(ctx, wrong), not_in_g0);
    }
}

TEST_CASE("colour 1: pairs of reducible loops") {
    auto q = build(2, {{0, 0, 2}, {1, 1, 2}});
    exercise_colour(q, 1, 2);

    auto r = apply_move(q, switching_move{1, {0, 1}});
    CHECK(r.loop(0) == 0);
    CHECK(r.loop(1) == 0);
    CHECK(r.get(0, 1) == 4);

    // reverse from the multiplicity-4 link: both oriented reversals are
    // structural patterns; neither source has colour 1 active at M = 8
    auto ctx = ctx_all(r);
    auto back = reverse_search(ctx, r, 1);
    CHECK(back.pattern_matches.size() == 2);
    CHECK(back.matches.empty());
    CHECK(reverse_count(ctx, r, 1) == 0);
    CHECK(Rat(2) <= nominal_b(1, ctx.k));  // b_1 = M/4 = 2, met with equality
}

TEST_CASE("colour 1 can be genuinely active at desk scale") {
    // 38 double loops: L = 38 > ceil(3 sqrt 152) = 37
    const int n = 38;
    multigraph q(n);
    for (int i = 0; i < n; ++i) q.set(i, i, 2);
    auto ctx = ctx_all(q);
    auto c = active_colour(ctx, q);
    REQUIRE(c.has_value());
    CHECK(*c == 1);
    auto moves = enumerate_moves_checked(ctx, q, 1);
    CHECK(moves.size() == static_cast<size_t>(n) * (n - 1));
    auto r = apply_move(q, moves.front());
    CHECK(r.degrees() == q.degrees());
    CHECK(reverse_count(ctx, r, 1) >= 1);
}

TEST_CASE("colour 2: pairs of triple loops") {
    auto q = build(2, {{0, 0, 3}, {1, 1, 3}});
    exercise_colour(q, 2, 2);
    auto r = apply_move(q, switching_move{2, {0, 1}});
    CHECK(r.loop(0) == 0);
    CHECK(r.get(0, 1) == 6);
}

TEST_CASE("colour 3: three simple loops into a triangle") {
    multigraph q(3);
    for (int i = 0; i < 3; ++i) q.set(i, i, 1);
    exercise_colour(q, 3, 6);
    auto r = apply_move(q, switching_move{3, {0, 1, 2}});
    for (int i = 0; i < 3; ++i) CHECK(r.loop(i) == 0);
    CHECK(r.get(0, 1) == 1);
    CHECK(r.get(0, 2) == 1);
    CHECK(r.get(1, 2) == 1);

    // adjacent loop vertices are rejected
    auto bad = build(3, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}, {0, 1, 1}});
    CHECK(enumerate_moves(bad, 3).empty());
}

TEST_CASE("colour 3 is active once simple loops outnumber sqrt(M)") {
    const int n = 6;
    multigraph q(n);
    for (int i = 0; i < n; ++i) q.set(i, i, 1);
    switch_context ctx(degree_sequence(q.degrees()), multiplicity_set::of({0, 1}),
                       multiplicity_set::of({0, 1}));
    auto c = active_colour(ctx, q);
    REQUIRE(c.has_value());
    CHECK(*c == 3);
    CHECK(enumerate_moves_checked(ctx, q, 3).size() == 120);
}

TEST_CASE("colour 4: links above the cap") {
    auto q = build(4, {{0, 1, 5}, {2, 3, 5}});
    exercise_colour(q, 4, 8);
    auto r = apply_move(q, switching_move{4, {0, 1, 2, 3}});
    CHECK(r.get(0, 1) == 4);
    CHECK(r.get(2, 3) == 4);
    CHECK(r.get(0, 2) == 1);
    CHECK(r.get(1, 3) == 1);
}

TEST_CASE("colour 5: links in the middle band need kmax >= 25") {
    // kmax = 25 makes the band [5, 5] nonempty
    auto q = build(6, {{0, 1, 25}, {2, 3, 5}, {4, 5, 5}});
    auto moves = enumerate_moves(q, 5);
    CHECK(moves.size() == 8);
    for (const auto& m : moves) {
        auto r = apply_move(q, m);
        CHECK(r.degrees() == q.degrees());
        check_modified_cells(q, r);
    }
    // the 25-link itself is above the cap, not in the band
    for (const auto& m : moves) {
        CHECK(m.seq[0] != 0);
        CHECK(m.seq[0] != 1);
    }
}

TEST_CASE("colours 6, 7, 8: complete bipartite rewrites") {
    SECTION("two double links") {
        auto q = build(4, {{0, 1, 2}, {2, 3, 2}});
        exercise_colour(q, 6, 8);
        auto r = apply_move(q, switching_move{6, {0, 1, 2, 3}});
        CHECK(r.get(0, 1) == 1);
        CHECK(r.get(2, 3) == 1);
        CHECK(r.get(0, 3) == 1);
        CHECK(r.get(1, 2) == 1);
    }
    SECTION("three triple links") {
        auto q = build(6, {{0, 1, 3}, {2, 3, 3}, {4, 5, 3}});
        exercise_colour(q, 7, 48);
    }
    SECTION("four quadruple links") {
        auto q = build(8, {{0, 1, 4}, {2, 3, 4}, {4, 5, 4}, {6, 7, 4}});
        auto moves = enumerate_moves(q, 8);
        CHECK(moves.size() == 384);  // 4! orders x 2^4 orientations
        auto r = apply_move(q, moves.front());
        CHECK(r.degrees() == q.degrees());
        check_modified_cells(q, r);
    }
}

TEST_CASE("colour 9: reducible loop plus two disjoint links") {
    auto q = build(5, {{0, 0, 2}, {1, 2, 1}, {3, 4, 1}});
    exercise_colour(q, 9, 8);
    auto r = apply_move(q, switching_move{9, {0, 1, 2, 3, 4}});
    CHECK(r.loop(0) == 0);
    for (int x = 1; x <= 4; ++x) CHECK(r.get(0, x) == 1);
    CHECK(r.get(1, 2) == 0);
    CHECK(r.get(3, 4) == 0);

    // nominal ledger at this instance: a9 = L M^2 / 2 = 32, b9 = [4]_4 = 24
    auto nb = nominal_bounds(9, degree_sequence({4, 1, 1, 1, 1}), compute_stats(q));
    CHECK(nb.a == 32);
    CHECK(nb.b == 24);
    CHECK(nb.alpha == Real(24) / 32);
    CHECK(nb.hat_alpha == 15 * Real(24) / 32);
}

TEST_CASE("colour 10: triple loop feeding three links") {
    auto q = build(7, {{0, 0, 3}, {1, 2, 1}, {3, 4, 1}, {5, 6, 1}});
    exercise_colour(q, 10, 48);
    auto r = apply_move(q, switching_move{10, {0, 1, 2, 3, 4, 5, 6}});
    CHECK(r.loop(0) == 0);
    for (int x = 1; x <= 6; ++x) CHECK(r.get(0, x) == 1);
}

TEST_CASE("colour 11: exotic central link") {
    auto q = build(8, {{0, 1, 4}, {2, 3, 1}, {4, 5, 1}, {6, 7, 1}});
    exercise_colour(q, 11, 96);
    auto r = apply_move(q, switching_move{11, {0, 1, 2, 3, 4, 5, 6, 7}});
    CHECK(r.get(0, 1) == 1);
    CHECK(r.get(0, 2) == 1);
    CHECK(r.get(1, 3) == 1);
}

TEST_CASE("colour 12: the smallest five-link instance") {
    // central multiplicity 5 plus five disjoint simple links
    multigraph q(12);
    q.set(0, 1, 5);
    for (int r = 0; r < 5; ++r) q.set(2 + 2 * r, 3 + 2 * r, 1);
    auto ctx = ctx_all(q);
    auto c = active_colour(ctx, q);
    REQUIRE(c.has_value());
    CHECK(*c == 12);
    auto moves = enumerate_moves_checked(ctx, q, 12);
    CHECK(moves.size() == 7680);  // 2 central orientations x 5! orders x 2^5
    auto r = apply_move(q, moves.front());
    CHECK(r.degrees() == q.degrees());
    check_modified_cells(q, r);
    CHECK(r.get(0, 1) == 0);
    auto back = reverse_search(ctx, r, 12);
    bool found = false;
    for (const auto& hit : back.matches)
        if (hit.source == q) found = true;
    CHECK(found);
}

TEST_CASE("colour 13: simple loop plus disjoint link") {
    auto q = build(3, {{0, 0, 1}, {1, 2, 1}});
    exercise_colour(q, 13, 2);
    auto r = apply_move(q, switching_move{13, {0, 1, 2}});
    CHECK(r.loop(0) == 0);
    CHECK(r.get(0, 1) == 1);
    CHECK(r.get(0, 2) == 1);
    CHECK(r.degrees() == std::vector<int>{2, 1, 1});
}

TEST_CASE("colour 14: double link into two cherries") {
    auto q = build(6, {{0, 1, 2}, {2, 3, 1}, {4, 5, 1}});
    exercise_colour(q, 14, 16);
    auto r = apply_move(q, switching_move{14, {0, 1, 2, 3, 4, 5}});
    CHECK(r.get(0, 1) == 0);
    CHECK(r.get(0, 2) == 1);
    CHECK(r.get(1, 3) == 1);
}

TEST_CASE("colour 15: triple link star rewrite") {
    auto q = build(8, {{0, 1, 3}, {2, 3, 1}, {4, 5, 1}, {6, 7, 1}});
    exercise_colour(q, 15, 96);
    auto r = apply_move(q, switching_move{15, {0, 1, 2, 3, 4, 5, 6, 7}});
    CHECK(r.get(0, 1) == 0);
}

TEST_CASE("checked enumeration enforces the priority rule") {
    auto q = build(4, {{0, 1, 5}, {2, 3, 5}});  // e5 >= 1 makes colour 12 active
    auto ctx = ctx_all(q);
    auto c = active_colour(ctx, q);
    REQUIRE(c.has_value());
    CHECK(*c == 12);
    CHECK_THROWS_AS(enumerate_moves_checked(ctx, q, 4), wrong_colour);
    CHECK_FALSE(enumerate_moves(q, 4).empty());
}

TEST_CASE("invalid moves are rejected with reasons") {
    auto q = build(2, {{0, 0, 2}, {1, 1, 2}});
    CHECK_THROWS_AS(apply_move(q, switching_move{1, {0}}), invalid_move);
    CHECK_THROWS_AS(apply_move(q, switching_move{1, {0, 0}}), invalid_move);
    CHECK_THROWS_AS(apply_move(q, switching_move{1, {0, 5}}), invalid_move);
    CHECK_THROWS_AS(apply_move(q, switching_move{16, {0, 1}}), invalid_move);
    auto simple = build(2, {{0, 1, 1}});
    CHECK_THROWS_AS(apply_move(simple, switching_move{1, {0, 1}}), invalid_move);
}

TEST_CASE("nominal bounds need their statistic") {
    degree_sequence k({3, 3, 3, 3});
    multigraph k4(4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.set(i, j, 1);
    auto st = compute_stats(k4);
    for (int c : {9, 10, 11, 12, 13, 14, 15})
        CHECK_THROWS_AS(nominal_bounds(c, k, st), zero_denominator);
    auto nb = nominal_bounds(1, k, st);
    CHECK(nb.a == Real(9 * 12));
    CHECK(nb.b == Rat(3));
    CHECK(nb.hat_alpha == 15 * nb.alpha);
}

TEST_CASE("no active colour implies membership in Z") {
    // exhaustive over a mixed family at desk scale
    degree_sequence k({3, 3, 2, 2});
    auto J = multiplicity_set::of({0, 1, 2, 3});
    auto Js = multiplicity_set::of({0, 1});
    switch_context ctx(k, J, Js);
    auto [graphs, truncated] = enumerate_multigraphs(k, J, Js, 100000);
    REQUIRE_FALSE(truncated);
    for (const auto& g : graphs) {
        auto c = active_colour(ctx, g);
        if (!c) CHECK(in_z(g, J, Js, ctx.th));
    }
}

TEST_CASE("the Z region is not strictly absorbing at desk scale") {
    // six simple loops sit inside Z's caps yet fire colour 3, because the
    // sqrt-M trigger dips below the N1/2 cap on tiny instances
    const int n = 6;
    multigraph q(n);
    for (int i = 0; i < n; ++i) q.set(i, i, 1);
    switch_context ctx(degree_sequence(q.degrees()), multiplicity_set::of({0, 1}),
                       multiplicity_set::of({0, 1}));
    CHECK(in_z(q, ctx.J, ctx.Jstar, ctx.th));
    auto c = active_colour(ctx, q);
    REQUIRE(c.has_value());
    CHECK(*c == 3);
}

TEST_CASE("colour 13 fires once the loop tally clears half its cap") {
    // ten simple loops among a crowd of degree-1 vertices: the N1 cap scales
    // like 480 M2/M, so M = 600 pulls half the cap below the loop tally while
    // the sqrt-M trigger stays idle (10 <= 25)
    const int loops = 10, crowd = 580;
    multigraph q(loops + crowd);
    for (int i = 0; i < loops; ++i) q.set(i, i, 1);
    for (int i = 0; i < crowd; i += 2) q.set(loops + i, loops + i + 1, 1);
    switch_context ctx(degree_sequence(q.degrees()), multiplicity_set::of({0, 1}),
                       multiplicity_set::of({0, 1}));
    REQUIRE(ctx.th.half_n1() < loops);
    REQUIRE(loops <= ctx.th.sqrt_m);
    auto c = active_colour(ctx, q);
    REQUIRE(c.has_value());
    CHECK(*c == 13);
    auto moves = enumerate_moves_checked(ctx, q, 13);
    CHECK(moves.size() == 10u * 290 * 2);
    auto r = apply_move(q, moves.front());
    CHECK(r.degrees() == q.degrees());
    CHECK(reverse_count(ctx, r, 13) >= 1);
}

TEST_CASE("colour 14 fires once double links clear half their cap") {
    // eight double links plus a large simple crowd: M = 200 pushes N2/2 to 4
    const int doubles = 8, crowd = 168;
    multigraph q(2 * doubles + crowd);
    for (int i = 0; i < doubles; ++i) q.set(2 * i, 2 * i + 1, 2);
    const int base = 2 * doubles;
    for (int i = 0; i < crowd; i += 2) q.set(base + i, base + i + 1, 1);
    switch_context ctx(degree_sequence(q.degrees()), multiplicity_set::of({0, 1, 2}),
                       multiplicity_set::of({0}));
    REQUIRE(ctx.th.half_n2() < doubles);
    auto c = active_colour(ctx, q);
    REQUIRE(c.has_value());
    CHECK(*c == 14);
    auto moves = enumerate_moves_checked(ctx, q, 14);
    CHECK(moves.size() == 8u * 2 * (84 * 2) * (83 * 2));
    auto r = apply_move(q, moves.front());
    CHECK(r.degrees() == q.degrees());
    CHECK(reverse_count(ctx, r, 14) >= 1);

    // nominal ledger at this scale: alpha = M2^2 / (e2 M^2) is comfortably
    // below 1/120, so hat_alpha stays below 1/8
    auto nb = nominal_bounds(14, ctx.k, compute_stats(q));
    CHECK(nb.alpha <= Real(1) / 120);
    CHECK(nb.hat_alpha <= Real(1) / 8);
}

TEST_CASE("colour 15 fires once triple links clear half their cap") {
    // three triple links plus a simple crowd: M = 44 brings N3/2 down to 2
    const int triples = 3, crowd = 26;
    multigraph q(2 * triples + crowd);
    for (int i = 0; i < triples; ++i) q.set(2 * i, 2 * i + 1, 3);
    const int base = 2 * triples;
    for (int i = 0; i < crowd; i += 2) q.set(base + i, base + i + 1, 1);
    switch_context ctx(degree_sequence(q.degrees()), multiplicity_set::of({0, 1, 3}),
                       multiplicity_set::of({0}));
    REQUIRE(ctx.th.half_n3() < triples);
    auto c = active_colour(ctx, q);
    REQUIRE(c.has_value());
    CHECK(*c == 15);
    auto moves = enumerate_moves_checked(ctx, q, 15);
    CHECK(moves.size() == 3u * 2 * 13 * 12 * 11 * 8);
    auto r = apply_move(q, moves.front());
    CHECK(r.degrees() == q.degrees());
    CHECK(reverse_count(ctx, r, 15) >= 1);
}

TEST_CASE("reverse search from a complete graph finds no colour-3 preimage") {
    multigraph k4(4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.set(i, j, 1);
    auto ctx = ctx_all(k4);
    CHECK(reverse_count(ctx, k4, 3) == 0);
}
