#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mgcount/degree_core.hpp"
#include "mgcount/multigraph.hpp"
#include "mgcount/thresholds.hpp"

namespace mgcount {

// Multiplicity census of a multigraph.  `ell[D]` counts loops of multiplicity
// exactly D, `e[D]` links of multiplicity exactly D.  The aggregates drive the
// colour triggers:
//   L        loops with D == 2 or D >= 4
//   e_plus   links with D > max{4, ceil(sqrt(kmax))}
//   e_minus  links with 5 <= D <= ceil(sqrt(kmax))
//   e_exotic links with D == 4 or D >= 7
struct mult_stats {
    std::map<long long, long long> ell;
    std::map<long long, long long> e;
    long long L = 0;
    long long e_plus = 0;
    long long e_minus = 0;
    long long e_exotic = 0;
    Rat e1_fraction = 0;  // e_1 / (M/2)

    long long loop_count(long long d) const {
        auto it = ell.find(d);
        return it == ell.end() ? 0 : it->second;
    }
    long long link_count(long long d) const {
        auto it = e.find(d);
        return it == e.end() ? 0 : it->second;
    }
};

inline mult_stats compute_stats(const multigraph& q) {
    mult_stats st;
    long long m = 0;
    int kmax = 0;
    for (int i = 0; i < q.n(); ++i) {
        long long d = q.degree(i);
        m += d;
        kmax = std::max<int>(kmax, static_cast<int>(d));
    }
    long long sqrt_kmax = iceil_sqrt(kmax);
    long long cap4 = std::max<long long>(4, sqrt_kmax);
    for (int i = 0; i < q.n(); ++i) {
        long long d = q.loop(i);
        if (d >= 1) {
            ++st.ell[d];
            if (d == 2 || d >= 4) ++st.L;
        }
        for (int j = i + 1; j < q.n(); ++j) {
            long long v = q.get(i, j);
            if (v >= 1) {
                ++st.e[v];
                if (v > cap4) ++st.e_plus;
                if (v >= 5 && v <= sqrt_kmax) ++st.e_minus;
                if (v == 4 || v >= 7) ++st.e_exotic;
            }
        }
    }
    if (m > 0) st.e1_fraction = Rat(2 * st.link_count(1), m);
    return st;
}

// One rewrite step: `colour` in 1..15 and the defining vertex sequence, in
// the per-colour order documented beside the enumerators below.
struct switching_move {
    int colour = 0;
    std::vector<int> seq;

    bool operator==(const switching_move& o) const {
        return colour == o.colour && seq == o.seq;
    }
};

inline size_t move_seq_length(int colour) {
    switch (colour) {
        case 1: case 2: return 2;
        case 3: case 13: return 3;
        case 4: case 5: case 6: return 4;
        case 9: return 5;
        case 7: case 14: return 6;
        case 10: return 7;
        case 8: case 11: case 15: return 8;
        case 12: return 12;
        default: throw invalid_move("colour must be in 1..15");
    }
}

// Instance context for the priority rule: the fixed degree sequence, the
// admissible multiplicity sets, and the trigger thresholds.
struct switch_context {
    degree_sequence k;
    multiplicity_set J;
    multiplicity_set Jstar;
    thresholds th;

    switch_context(degree_sequence k_, multiplicity_set j, multiplicity_set jstar)
        : k(std::move(k_)), J(std::move(j)), Jstar(std::move(jstar)),
          th(compute_thresholds(k)) {}
};

// Least colour whose trigger fires; nullopt when none does (then Q meets the
// Z caps).  Throws NotInG0 when Q is not a G0 member of the instance.
inline std::optional<int> active_colour(const switch_context& ctx, const multigraph& q) {
    if (q.degrees() != ctx.k.degrees())
        throw not_in_g0("multigraph degrees do not match the instance");
    if (!in_g0(q, ctx.J, ctx.Jstar))
        throw not_in_g0("multigraph has a multiplicity outside the widened family");
    const mult_stats st = compute_stats(q);
    const thresholds& th = ctx.th;
    if (st.L > th.three_sqrt_m) return 1;
    if (st.loop_count(3) > th.three_sqrt_m) return 2;
    if (st.loop_count(1) > th.sqrt_m) return 3;
    if (st.e_plus > th.c4_level) return 4;
    if (st.e_minus > th.c5_level) return 5;
    if (st.link_count(2) > th.m56) return 6;
    if (st.link_count(3) > th.m56) return 7;
    if (st.link_count(4) > th.m56) return 8;
    if (st.L >= 1) return 9;
    if (st.loop_count(3) >= 1) return 10;
    if (st.e_exotic >= 1) return 11;
    if (st.link_count(5) + st.link_count(6) >= 1) return 12;
    if (st.loop_count(1) > th.half_n1()) return 13;
    if (st.link_count(2) > th.half_n2()) return 14;
    if (st.link_count(3) > th.half_n3()) return 15;
    return std::nullopt;
}

namespace detail {

struct cell_delta {
    int i, j;
    long long delta;
};

inline long long q_kmax(const multigraph& q) {
    long long kmax = 0;
    for (int i = 0; i < q.n(); ++i) kmax = std::max(kmax, q.degree(i));
    return kmax;
}

inline bool is_reducible_loop(long long d) { return d == 2 || d >= 4; }

// Structural validation of a move against Q.  On success returns the cell
// rewrites; on failure explains why.  The colour-4 and colour-5 bands are
// derived from Q's own maximum degree.
inline std::optional<std::vector<cell_delta>> try_rewrite(const multigraph& q,
                                                          const switching_move& m,
                                                          std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) -> std::optional<std::vector<cell_delta>> {
        if (why) *why = msg;
        return std::nullopt;
    };
    const int colour = m.colour;
    if (colour < 1 || colour > 15) return fail("colour must be in 1..15");
    const auto& s = m.seq;
    if (s.size() != move_seq_length(colour)) return fail("wrong sequence length");
    for (size_t a = 0; a < s.size(); ++a) {
        if (s[a] < 0 || s[a] >= q.n()) return fail("vertex out of range");
        for (size_t b = a + 1; b < s.size(); ++b) {
            if (s[a] == s[b]) return fail("vertices must be distinct");
        }
    }
    const long long kmax = q_kmax(q);
    const long long sqrt_kmax = iceil_sqrt(kmax);
    const long long cap4 = std::max<long long>(4, sqrt_kmax);
    std::vector<cell_delta> d;
    auto link = [&](int a, int b) { return q.get(a, b); };

    switch (colour) {
        case 1: {
            for (int v : {s[0], s[1]}) {
                if (!is_reducible_loop(q.loop(v))) return fail("needs loops of multiplicity 2 or >= 4");
            }
            d = {{s[0], s[0], -2}, {s[1], s[1], -2}, {s[0], s[1], +4}};
            break;
        }
        case 2: {
            for (int v : {s[0], s[1]}) {
                if (q.loop(v) != 3) return fail("needs loops of multiplicity exactly 3");
            }
            d = {{s[0], s[0], -3}, {s[1], s[1], -3}, {s[0], s[1], +6}};
            break;
        }
        case 3: {
            for (int v : s) {
                if (q.loop(v) != 1) return fail("needs simple loops");
            }
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b) {
                    if (link(s[a], s[b]) != 0) return fail("loop vertices must be pairwise non-adjacent");
                }
            for (int a = 0; a < 3; ++a) d.push_back({s[a], s[a], -1});
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b) d.push_back({s[a], s[b], +1});
            break;
        }
        case 4:
        case 5: {
            const int v1 = s[0], w1 = s[1], v2 = s[2], w2 = s[3];
            for (auto [x, y] : {std::pair{v1, w1}, std::pair{v2, w2}}) {
                long long mult = link(x, y);
                bool band_ok = (colour == 4) ? (mult > cap4)
                                             : (mult >= 5 && mult <= sqrt_kmax);
                if (!band_ok) return fail("link multiplicity outside the colour band");
            }
            if (link(v1, v2) != 0 || link(w1, w2) != 0) return fail("target slots must be non-edges");
            d = {{v1, w1, -1}, {v2, w2, -1}, {v1, v2, +1}, {w1, w2, +1}};
            break;
        }
        case 6:
        case 7:
        case 8: {
            const int j = colour - 4;
            std::vector<int> vs(j), ws(j);
            for (int r = 0; r < j; ++r) {
                vs[r] = s[2 * r];
                ws[r] = s[2 * r + 1];
            }
            for (int r = 0; r < j; ++r) {
                if (link(vs[r], ws[r]) != j) return fail("links must have multiplicity " + std::to_string(j));
            }
            for (int r = 0; r < j; ++r)
                for (int t = 0; t < j; ++t) {
                    if (r != t && link(vs[r], ws[t]) != 0) return fail("cross pairs must be non-edges");
                }
            for (int r = 0; r < j; ++r) d.push_back({vs[r], ws[r], 1 - j});
            for (int r = 0; r < j; ++r)
                for (int t = 0; t < j; ++t) {
                    if (r != t) d.push_back({vs[r], ws[t], +1});
                }
            break;
        }
        case 9: {
            const int v0 = s[0], v1 = s[1], w1 = s[2], v2 = s[3], w2 = s[4];
            if (!is_reducible_loop(q.loop(v0))) return fail("needs a loop of multiplicity 2 or >= 4");
            if (link(v1, w1) != 1 || link(v2, w2) != 1) return fail("needs two simple links");
            for (int x : {v1, w1, v2, w2}) {
                if (link(v0, x) != 0) return fail("loop vertex must be non-adjacent to the links");
            }
            d = {{v0, v0, -2}, {v1, w1, -1}, {v2, w2, -1},
                 {v0, v1, +1}, {v0, w1, +1}, {v0, v2, +1}, {v0, w2, +1}};
            break;
        }
        case 10: {
            const int v0 = s[0];
            if (q.loop(v0) != 3) return fail("needs a loop of multiplicity exactly 3");
            for (int r = 0; r < 3; ++r) {
                int vj = s[1 + 2 * r], wj = s[2 + 2 * r];
                if (link(vj, wj) != 1) return fail("needs three simple links");
                if (link(v0, vj) != 0 || link(v0, wj) != 0)
                    return fail("loop vertex must be non-adjacent to the links");
            }
            d.push_back({v0, v0, -3});
            for (int r = 0; r < 3; ++r) {
                int vj = s[1 + 2 * r], wj = s[2 + 2 * r];
                d.push_back({vj, wj, -1});
                d.push_back({v0, vj, +1});
                d.push_back({v0, wj, +1});
            }
            break;
        }
        case 11:
        case 12:
        case 15: {
            // Shared star shape: a central link (v0, w0) loses `drop`, each
            // satellite link (vj, wj) is replaced by {v0,vj} and {w0,wj}.
            const int v0 = s[0], w0 = s[1];
            const long long mult = link(v0, w0);
            int count;
            long long drop;
            if (colour == 11) {
                if (!(mult == 4 || mult >= 7)) return fail("central link must have multiplicity 4 or >= 7");
                count = 3; drop = 3;
            } else if (colour == 12) {
                if (!(mult == 5 || mult == 6)) return fail("central link must have multiplicity 5 or 6");
                count = 5; drop = 5;
            } else {
                if (mult != 3) return fail("central link must have multiplicity exactly 3");
                count = 3; drop = 3;
            }
            d.push_back({v0, w0, -drop});
            for (int r = 0; r < count; ++r) {
                int vj = s[2 + 2 * r], wj = s[3 + 2 * r];
                if (link(vj, wj) != 1) return fail("satellite links must be simple");
                if (link(v0, vj) != 0 || link(w0, wj) != 0)
                    return fail("star slots must be non-edges");
                d.push_back({vj, wj, -1});
                d.push_back({v0, vj, +1});
                d.push_back({w0, wj, +1});
            }
            break;
        }
        case 13: {
            const int v0 = s[0], v1 = s[1], v2 = s[2];
            if (q.loop(v0) != 1) return fail("needs a simple loop");
            if (link(v1, v2) != 1) return fail("needs a simple link");
            if (link(v0, v1) != 0 || link(v0, v2) != 0)
                return fail("loop vertex must be non-adjacent to the link");
            d = {{v0, v0, -1}, {v1, v2, -1}, {v0, v1, +1}, {v0, v2, +1}};
            break;
        }
        case 14: {
            const int v0 = s[0], w0 = s[1];
            if (link(v0, w0) != 2) return fail("central link must have multiplicity exactly 2");
            d.push_back({v0, w0, -2});
            for (int r = 0; r < 2; ++r) {
                int vj = s[2 + 2 * r], wj = s[3 + 2 * r];
                if (link(vj, wj) != 1) return fail("satellite links must be simple");
                if (link(v0, vj) != 0 || link(w0, wj) != 0)
                    return fail("star slots must be non-edges");
                d.push_back({vj, wj, -1});
                d.push_back({v0, vj, +1});
                d.push_back({w0, wj, +1});
            }
            break;
        }
        default:
            return fail("colour must be in 1..15");
    }
    return d;
}

}  // namespace detail

// Applies a structurally valid move; throws InvalidMove with the reason
// otherwise.  Degree preservation is a consequence of the rewrites, not a
// runtime adjustment.
inline multigraph apply_move(const multigraph& q, const switching_move& m) {
    std::string why;
    auto deltas = detail::try_rewrite(q, m, &why);
    if (!deltas) throw invalid_move(why);
    multigraph r = q;
    for (const auto& d : *deltas) r.add(d.i, d.j, d.delta);
    return r;
}

// --- forward enumeration ------------------------------------------------
//
// Vertex-sequence conventions (all vertices distinct):
//   c1, c2   (v1, v2)                    two reducible / triple loops
//   c3       (v1, v2, v3)                three simple loops -> triangle
//   c4, c5   (v1, w1, v2, w2)            two banded links, cross simple
//   c6..c8   (v1, w1, ..., vj, wj)       j links of multiplicity j -> K_{j,j}
//   c9       (v0, v1, w1, v2, w2)        loop at v0, two simple links
//   c10      (v0, v1, w1, v2, w2, v3, w3)loop of multiplicity 3 at v0
//   c11      (v0, w0, v1, w1, .., v3, w3)central multiplicity 4 or >= 7
//   c12      (v0, w0, v1, w1, .., v5, w5)central multiplicity 5 or 6
//   c13      (v0, v1, v2)                simple loop plus simple link
//   c14      (v0, w0, v1, w1, v2, w2)    central multiplicity 2
//   c15      (v0, w0, v1, w1, .., v3, w3)central multiplicity 3
//
// Enumeration is structural: it lists every sequence for which the colour's
// rewrite applies, regardless of the priority rule.  Use
// enumerate_moves_checked to enforce the rule.
inline std::vector<switching_move> enumerate_moves(const multigraph& q, int colour) {
    std::vector<switching_move> out;
    const int n = q.n();
    const long long kmax = detail::q_kmax(q);
    const long long sqrt_kmax = iceil_sqrt(kmax);
    const long long cap4 = std::max<long long>(4, sqrt_kmax);

    auto emit = [&](std::vector<int> seq) {
        switching_move m{colour, std::move(seq)};
        if (detail::try_rewrite(q, m)) out.push_back(std::move(m));
    };

    // Ordered selection of `count` vertex-disjoint oriented links of
    // multiplicity `mult`, each endpoint passing `ok`, avoiding `used`.
    std::vector<int> used;
    std::function<void(int, long long, const std::function<bool(int, int)>&,
                       std::vector<int>&, const std::function<void()>&)>
        pick_links = [&](int count, long long mult, const std::function<bool(int, int)>& ok,
                         std::vector<int>& seq, const std::function<void()>& done) {
            if (count == 0) {
                done();
                return;
            }
            for (int v = 0; v < n; ++v) {
                if (std::find(used.begin(), used.end(), v) != used.end()) continue;
                for (int w = 0; w < n; ++w) {
                    if (w == v) continue;
                    if (std::find(used.begin(), used.end(), w) != used.end()) continue;
                    if (q.get(v, w) != mult) continue;
                    if (ok && !ok(v, w)) continue;
                    used.push_back(v);
                    used.push_back(w);
                    seq.push_back(v);
                    seq.push_back(w);
                    pick_links(count - 1, mult, ok, seq, done);
                    seq.pop_back();
                    seq.pop_back();
                    used.pop_back();
                    used.pop_back();
                }
            }
        };

    switch (colour) {
        case 1:
        case 2: {
            auto loop_ok = [&](int v) {
                return colour == 1 ? detail::is_reducible_loop(q.loop(v)) : q.loop(v) == 3;
            };
            for (int v1 = 0; v1 < n; ++v1) {
                if (!loop_ok(v1)) continue;
                for (int v2 = 0; v2 < n; ++v2) {
                    if (v2 != v1 && loop_ok(v2)) emit({v1, v2});
                }
            }
            break;
        }
        case 3: {
            for (int v1 = 0; v1 < n; ++v1) {
                if (q.loop(v1) != 1) continue;
                for (int v2 = 0; v2 < n; ++v2) {
                    if (v2 == v1 || q.loop(v2) != 1 || q.get(v1, v2) != 0) continue;
                    for (int v3 = 0; v3 < n; ++v3) {
                        if (v3 == v1 || v3 == v2 || q.loop(v3) != 1) continue;
                        if (q.get(v1, v3) != 0 || q.get(v2, v3) != 0) continue;
                        emit({v1, v2, v3});
                    }
                }
            }
            break;
        }
        case 4:
        case 5: {
            auto band_ok = [&](long long mult) {
                return colour == 4 ? (mult > cap4) : (mult >= 5 && mult <= sqrt_kmax);
            };
            for (int v1 = 0; v1 < n; ++v1)
                for (int w1 = 0; w1 < n; ++w1) {
                    if (w1 == v1 || !band_ok(q.get(v1, w1))) continue;
                    for (int v2 = 0; v2 < n; ++v2) {
                        if (v2 == v1 || v2 == w1 || q.get(v1, v2) != 0) continue;
                        for (int w2 = 0; w2 < n; ++w2) {
                            if (w2 == v1 || w2 == w1 || w2 == v2) continue;
                            if (!band_ok(q.get(v2, w2)) || q.get(w1, w2) != 0) continue;
                            emit({v1, w1, v2, w2});
                        }
                    }
                }
            break;
        }
        case 6:
        case 7:
        case 8: {
            const int j = colour - 4;
            std::vector<int> seq;
            // Cross pairs against every previously picked link must be clear.
            auto ok = [&](int v, int w) {
                for (size_t r = 0; r + 1 < seq.size(); r += 2) {
                    if (q.get(v, seq[r + 1]) != 0 || q.get(seq[r], w) != 0) return false;
                }
                return true;
            };
            pick_links(j, j, ok, seq, [&]() { emit(seq); });
            break;
        }
        case 9: {
            for (int v0 = 0; v0 < n; ++v0) {
                if (!detail::is_reducible_loop(q.loop(v0))) continue;
                used = {v0};
                std::vector<int> seq{v0};
                auto ok = [&](int v, int w) {
                    return q.get(v0, v) == 0 && q.get(v0, w) == 0;
                };
                pick_links(2, 1, ok, seq, [&]() { emit(seq); });
            }
            used.clear();
            break;
        }
        case 10: {
            for (int v0 = 0; v0 < n; ++v0) {
                if (q.loop(v0) != 3) continue;
                used = {v0};
                std::vector<int> seq{v0};
                auto ok = [&](int v, int w) {
                    return q.get(v0, v) == 0 && q.get(v0, w) == 0;
                };
                pick_links(3, 1, ok, seq, [&]() { emit(seq); });
            }
            used.clear();
            break;
        }
        case 11:
        case 12:
        case 15: {
            const int count = (colour == 12) ? 5 : 3;
            auto central_ok = [&](long long mult) {
                if (colour == 11) return mult == 4 || mult >= 7;
                if (colour == 12) return mult == 5 || mult == 6;
                return mult == 3;
            };
            for (int v0 = 0; v0 < n; ++v0)
                for (int w0 = 0; w0 < n; ++w0) {
                    if (w0 == v0 || !central_ok(q.get(v0, w0))) continue;
                    used = {v0, w0};
                    std::vector<int> seq{v0, w0};
                    auto ok = [&](int v, int w) {
                        return q.get(v0, v) == 0 && q.get(w0, w) == 0;
                    };
                    pick_links(count, 1, ok, seq, [&]() { emit(seq); });
                }
            used.clear();
            break;
        }
        case 13: {
            for (int v0 = 0; v0 < n; ++v0) {
                if (q.loop(v0) != 1) continue;
                for (int v1 = 0; v1 < n; ++v1) {
                    if (v1 == v0 || q.get(v0, v1) != 0) continue;
                    for (int v2 = 0; v2 < n; ++v2) {
                        if (v2 == v0 || v2 == v1) continue;
                        if (q.get(v1, v2) != 1 || q.get(v0, v2) != 0) continue;
                        emit({v0, v1, v2});
                    }
                }
            }
            break;
        }
        case 14: {
            for (int v0 = 0; v0 < n; ++v0)
                for (int w0 = 0; w0 < n; ++w0) {
                    if (w0 == v0 || q.get(v0, w0) != 2) continue;
                    used = {v0, w0};
                    std::vector<int> seq{v0, w0};
                    auto ok = [&](int v, int w) {
                        return q.get(v0, v) == 0 && q.get(w0, w) == 0;
                    };
                    pick_links(2, 1, ok, seq, [&]() { emit(seq); });
                }
            used.clear();
            break;
        }
        default:
            throw invalid_move("colour must be in 1..15");
    }
    return out;
}

// Priority-checked variant: the requested colour must be the active one.
inline std::vector<switching_move> enumerate_moves_checked(const switch_context& ctx,
                                                           const multigraph& q, int colour) {
    auto active = active_colour(ctx, q);
    if (!active || *active != colour)
        throw wrong_colour("colour " + std::to_string(colour) + " is not active here");
    return enumerate_moves(q, colour);
}

// --- reverse search -------------------------------------------------------

struct reverse_hit {
    multigraph source;
    switching_move move;
};

// `pattern_matches` lists every structural reversal (the inverted rewrite is
// a valid move on the reconstructed source); `matches` keeps those whose
// source lies in G0 with the requested colour active.  The per-colour upper
// bounds b_c cap the pattern count.
struct reverse_search_result {
    std::vector<reverse_hit> matches;
    std::vector<reverse_hit> pattern_matches;
};

inline reverse_search_result reverse_search(const switch_context& ctx, const multigraph& r,
                                            int colour) {
    if (colour < 1 || colour > 15) throw invalid_move("colour must be in 1..15");
    reverse_search_result out;
    const int n = r.n();
    const long long kmax = detail::q_kmax(r);
    const long long sqrt_kmax = iceil_sqrt(kmax);
    const long long cap4 = std::max<long long>(4, sqrt_kmax);

    // Candidate check shared by all colours: undo the rewrite, confirm the
    // move is structurally valid on the source and really lands on R.
    auto consider = [&](const std::vector<int>& seq,
                        const std::vector<detail::cell_delta>& undo) {
        multigraph q = r;
        for (const auto& d : undo) {
            if (q.get(d.i, d.j) + d.delta < 0) return;
            q.add(d.i, d.j, d.delta);
        }
        switching_move m{colour, seq};
        auto deltas = detail::try_rewrite(q, m);
        if (!deltas) return;
        multigraph check = q;
        for (const auto& d : *deltas) check.add(d.i, d.j, d.delta);
        if (!(check == r)) return;
        reverse_hit hit{std::move(q), std::move(m)};
        out.pattern_matches.push_back(hit);
        if (r.degrees() == ctx.k.degrees() && in_g0(hit.source, ctx.J, ctx.Jstar)) {
            auto active = active_colour(ctx, hit.source);
            if (active && *active == colour) out.matches.push_back(std::move(hit));
        }
    };

    auto simple_neighbours = [&](int v) {
        std::vector<int> ns;
        for (int u = 0; u < n; ++u) {
            if (u != v && r.get(v, u) == 1) ns.push_back(u);
        }
        return ns;
    };

    switch (colour) {
        case 1: {
            for (int v1 = 0; v1 < n; ++v1)
                for (int v2 = 0; v2 < n; ++v2) {
                    if (v2 == v1 || r.get(v1, v2) < 4) continue;
                    consider({v1, v2}, {{v1, v1, +2}, {v2, v2, +2}, {v1, v2, -4}});
                }
            break;
        }
        case 2: {
            for (int v1 = 0; v1 < n; ++v1)
                for (int v2 = 0; v2 < n; ++v2) {
                    if (v2 == v1 || r.get(v1, v2) < 6) continue;
                    consider({v1, v2}, {{v1, v1, +3}, {v2, v2, +3}, {v1, v2, -6}});
                }
            break;
        }
        case 3: {
            for (int v1 = 0; v1 < n; ++v1)
                for (int v2 : simple_neighbours(v1))
                    for (int v3 : simple_neighbours(v1)) {
                        if (v3 == v2 || r.get(v2, v3) != 1) continue;
                        consider({v1, v2, v3},
                                 {{v1, v1, +1}, {v2, v2, +1}, {v3, v3, +1},
                                  {v1, v2, -1}, {v1, v3, -1}, {v2, v3, -1}});
                    }
            break;
        }
        case 4:
        case 5: {
            auto band_src = [&](long long mult) {
                // Source multiplicity is mult + 1.
                return colour == 4 ? (mult + 1 > cap4)
                                   : (mult + 1 >= 5 && mult + 1 <= sqrt_kmax);
            };
            for (int v1 = 0; v1 < n; ++v1)
                for (int w1 = 0; w1 < n; ++w1) {
                    if (w1 == v1 || !band_src(r.get(v1, w1))) continue;
                    for (int v2 : simple_neighbours(v1)) {
                        if (v2 == w1) continue;
                        for (int w2 : simple_neighbours(w1)) {
                            if (w2 == v1 || w2 == v2 || !band_src(r.get(v2, w2))) continue;
                            consider({v1, w1, v2, w2},
                                     {{v1, w1, +1}, {v2, w2, +1}, {v1, v2, -1}, {w1, w2, -1}});
                        }
                    }
                }
            break;
        }
        case 6:
        case 7:
        case 8: {
            const int j = colour - 4;
            // All v_r lie in the simple neighbourhood of w_1, all w_s in the
            // simple neighbourhood of v_1.
            for (int v1 = 0; v1 < n; ++v1) {
                for (int w1 : simple_neighbours(v1)) {
                    auto vs_pool = simple_neighbours(w1);
                    auto ws_pool = simple_neighbours(v1);
                    std::vector<int> vs{v1}, ws{w1};
                    std::function<void(int)> extend = [&](int depth) {
                        if (depth == j) {
                            std::vector<int> seq;
                            std::vector<detail::cell_delta> undo;
                            for (int rr = 0; rr < j; ++rr) {
                                seq.push_back(vs[rr]);
                                seq.push_back(ws[rr]);
                                undo.push_back({vs[rr], ws[rr], j - 1});
                            }
                            for (int rr = 0; rr < j; ++rr)
                                for (int tt = 0; tt < j; ++tt) {
                                    if (rr != tt) undo.push_back({vs[rr], ws[tt], -1});
                                }
                            consider(seq, undo);
                            return;
                        }
                        for (int v : vs_pool) {
                            if (std::find(vs.begin(), vs.end(), v) != vs.end()) continue;
                            if (std::find(ws.begin(), ws.end(), v) != ws.end()) continue;
                            bool fits = true;
                            for (int w : ws) {
                                if (r.get(v, w) != 1) { fits = false; break; }
                            }
                            if (!fits) continue;
                            for (int w : ws_pool) {
                                if (w == v) continue;
                                if (std::find(vs.begin(), vs.end(), w) != vs.end()) continue;
                                if (std::find(ws.begin(), ws.end(), w) != ws.end()) continue;
                                bool ok = r.get(v, w) == 1;
                                for (int vv : vs) {
                                    if (!ok) break;
                                    if (r.get(vv, w) != 1) ok = false;
                                }
                                if (!ok) continue;
                                vs.push_back(v);
                                ws.push_back(w);
                                extend(depth + 1);
                                vs.pop_back();
                                ws.pop_back();
                            }
                        }
                    };
                    extend(1);
                }
            }
            break;
        }
        case 9: {
            for (int v0 = 0; v0 < n; ++v0) {
                if (r.loop(v0) == 1) continue;
                auto pool = simple_neighbours(v0);
                for (int v1 : pool)
                    for (int w1 : pool) {
                        if (w1 == v1 || r.get(v1, w1) != 0) continue;
                        for (int v2 : pool) {
                            if (v2 == v1 || v2 == w1) continue;
                            for (int w2 : pool) {
                                if (w2 == v1 || w2 == w1 || w2 == v2) continue;
                                if (r.get(v2, w2) != 0) continue;
                                consider({v0, v1, w1, v2, w2},
                                         {{v0, v0, +2},
                                          {v0, v1, -1}, {v0, w1, -1}, {v0, v2, -1}, {v0, w2, -1},
                                          {v1, w1, +1}, {v2, w2, +1}});
                            }
                        }
                    }
            }
            break;
        }
        case 10: {
            for (int v0 = 0; v0 < n; ++v0) {
                if (r.loop(v0) != 0) continue;
                auto pool = simple_neighbours(v0);
                std::vector<int> picked;
                std::function<void(int)> extend = [&](int depth) {
                    if (depth == 3) {
                        std::vector<int> seq{v0};
                        std::vector<detail::cell_delta> undo{{v0, v0, +3}};
                        for (int rr = 0; rr < 3; ++rr) {
                            int vj = picked[2 * rr], wj = picked[2 * rr + 1];
                            seq.push_back(vj);
                            seq.push_back(wj);
                            undo.push_back({v0, vj, -1});
                            undo.push_back({v0, wj, -1});
                            undo.push_back({vj, wj, +1});
                        }
                        consider(seq, undo);
                        return;
                    }
                    for (int vj : pool) {
                        if (std::find(picked.begin(), picked.end(), vj) != picked.end()) continue;
                        for (int wj : pool) {
                            if (wj == vj) continue;
                            if (std::find(picked.begin(), picked.end(), wj) != picked.end()) continue;
                            if (r.get(vj, wj) != 0) continue;
                            picked.push_back(vj);
                            picked.push_back(wj);
                            extend(depth + 1);
                            picked.pop_back();
                            picked.pop_back();
                        }
                    }
                };
                extend(0);
            }
            break;
        }
        case 11:
        case 12:
        case 15: {
            const int count = (colour == 12) ? 5 : 3;
            auto central_src = [&](long long mult) {
                if (colour == 11) return mult + 3 == 4 || mult + 3 >= 7;
                if (colour == 12) return mult + 5 == 5 || mult + 5 == 6;
                return mult == 0;  // source multiplicity 3 dropped to zero
            };
            const long long drop = (colour == 12) ? 5 : 3;
            for (int v0 = 0; v0 < n; ++v0)
                for (int w0 = 0; w0 < n; ++w0) {
                    if (w0 == v0 || !central_src(r.get(v0, w0))) continue;
                    auto v_pool = simple_neighbours(v0);
                    auto w_pool = simple_neighbours(w0);
                    std::vector<int> picked;
                    std::function<void(int)> extend = [&](int depth) {
                        if (depth == count) {
                            std::vector<int> seq{v0, w0};
                            std::vector<detail::cell_delta> undo{{v0, w0, +drop}};
                            for (int rr = 0; rr < count; ++rr) {
                                int vj = picked[2 * rr], wj = picked[2 * rr + 1];
                                seq.push_back(vj);
                                seq.push_back(wj);
                                undo.push_back({v0, vj, -1});
                                undo.push_back({w0, wj, -1});
                                undo.push_back({vj, wj, +1});
                            }
                            consider(seq, undo);
                            return;
                        }
                        for (int vj : v_pool) {
                            if (vj == w0) continue;
                            if (std::find(picked.begin(), picked.end(), vj) != picked.end())
                                continue;
                            for (int wj : w_pool) {
                                if (wj == v0 || wj == vj) continue;
                                if (std::find(picked.begin(), picked.end(), wj) != picked.end())
                                    continue;
                                if (r.get(vj, wj) != 0) continue;
                                picked.push_back(vj);
                                picked.push_back(wj);
                                extend(depth + 1);
                                picked.pop_back();
                                picked.pop_back();
                            }
                        }
                    };
                    extend(0);
                }
            break;
        }
        case 13: {
            for (int v0 = 0; v0 < n; ++v0) {
                if (r.loop(v0) != 0) continue;
                auto pool = simple_neighbours(v0);
                for (int v1 : pool)
                    for (int v2 : pool) {
                        if (v2 == v1 || r.get(v1, v2) != 0) continue;
                        consider({v0, v1, v2},
                                 {{v0, v0, +1}, {v0, v1, -1}, {v0, v2, -1}, {v1, v2, +1}});
                    }
            }
            break;
        }
        case 14: {
            for (int v0 = 0; v0 < n; ++v0)
                for (int w0 = 0; w0 < n; ++w0) {
                    if (w0 == v0 || r.get(v0, w0) != 0) continue;
                    auto v_pool = simple_neighbours(v0);
                    auto w_pool = simple_neighbours(w0);
                    std::vector<int> picked;
                    std::function<void(int)> extend = [&](int depth) {
                        if (depth == 2) {
                            std::vector<int> seq{v0, w0};
                            std::vector<detail::cell_delta> undo{{v0, w0, +2}};
                            for (int rr = 0; rr < 2; ++rr) {
                                int vj = picked[2 * rr], wj = picked[2 * rr + 1];
                                seq.push_back(vj);
                                seq.push_back(wj);
                                undo.push_back({v0, vj, -1});
                                undo.push_back({w0, wj, -1});
                                undo.push_back({vj, wj, +1});
                            }
                            consider(seq, undo);
                            return;
                        }
                        for (int vj : v_pool) {
                            if (vj == w0) continue;
                            if (std::find(picked.begin(), picked.end(), vj) != picked.end())
                                continue;
                            for (int wj : w_pool) {
                                if (wj == v0 || wj == vj) continue;
                                if (std::find(picked.begin(), picked.end(), wj) != picked.end())
                                    continue;
                                if (r.get(vj, wj) != 0) continue;
                                picked.push_back(vj);
                                picked.push_back(wj);
                                extend(depth + 1);
                                picked.pop_back();
                                picked.pop_back();
                            }
                        }
                    };
                    extend(0);
                }
            break;
        }
        default:
            break;
    }
    return out;
}

// Number of (source, move) pairs with the active-colour filter, the exact
// dual of the priority-filtered forward relation.
inline Int reverse_count(const switch_context& ctx, const multigraph& r, int colour) {
    return Int(reverse_search(ctx, r, colour).matches.size());
}

// --- nominal ledger -------------------------------------------------------
//
// Per-colour nominal forward guarantees a_c, reverse caps b_c, and the ratio
// alpha = b/a with hat_alpha = 15 * alpha (uniform lambda = 1/15):
//
//   c | a_c                 | b_c
//   1 | 9M                  | M/4
//   2 | 9M                  | M/6
//   3 | M^{3/2}/2           | kmax*M
//   4 | 60*kmax*M           | 2*kmax^2*M/cap4^2   (cap4 = max{4,ceil(sqrt kmax)})
//   5 | 30*kmax^2*M         | kmax^2*M
// 4+j | M^{5j/6}/2          | kmax^{2j-2}*M       (j = 2,3,4)
//   9 | L*M^2/2             | M_4
//  10 | ell_3*M^3/2         | M_6
//  11 | E*M^3               | kmax^3*M_4
//  12 | (e_5+e_6)*M^5       | M_5^2
//  13 | ell_1*M/2           | M_2
//  14 | e_2*M^2             | M_2^2
//  15 | e_3*M^3             | M_3^2
//
// a is irrational for colours 3 and 6..8, so a/alpha/hat_alpha are 50-digit
// floats while b stays exact.
struct nominal_bound_set {
    Real a;
    Rat b;
    Real alpha;
    Real hat_alpha;
};

// Reverse cap b_c alone; a pure function of the degree sequence.
inline Rat nominal_b(int colour, const degree_sequence& k) {
    const Int m = k.total();
    const long long kmax = k.kmax();
    const long long cap4 = std::max<long long>(4, iceil_sqrt(kmax));
    switch (colour) {
        case 1: return Rat(m, 4);
        case 2: return Rat(m, 6);
        case 3: return Rat(kmax * m);
        case 4: return Rat(2 * kmax * kmax * m, cap4 * cap4);
        case 5: return Rat(kmax * kmax * m);
        case 6: case 7: case 8: {
            int j = colour - 4;
            return Rat(ipow(Int(kmax), 2 * j - 2) * m);
        }
        case 9: return Rat(k.moment(4));
        case 10: return Rat(k.moment(6));
        case 11: return Rat(ipow(Int(kmax), 3) * k.moment(4));
        case 12: return Rat(k.moment(5) * k.moment(5));
        case 13: return Rat(k.moment(2));
        case 14: return Rat(k.moment(2) * k.moment(2));
        case 15: return Rat(k.moment(3) * k.moment(3));
        default: throw invalid_move("colour must be in 1..15");
    }
}

inline nominal_bound_set nominal_bounds(int colour, const degree_sequence& k,
                                        const mult_stats& st) {
    const Real m = to_real(k.total());
    const Real kmax = Real(k.kmax());
    auto stat_or_throw = [&](long long v, const char* what) {
        if (v == 0) throw zero_denominator(std::string("nominal a undefined: ") + what +
                                           " is zero");
        return Real(v);
    };
    Real a;
    switch (colour) {
        case 1: case 2: a = 9 * m; break;
        case 3: a = pow(m, Real(3) / 2) / 2; break;
        case 4: a = 60 * kmax * m; break;
        case 5: a = 30 * kmax * kmax * m; break;
        case 6: case 7: case 8: {
            int j = colour - 4;
            a = pow(m, Real(5 * j) / 6) / 2;
            break;
        }
        case 9: a = stat_or_throw(st.L, "L") * m * m / 2; break;
        case 10: a = stat_or_throw(st.loop_count(3), "ell_3") * m * m * m / 2; break;
        case 11: a = stat_or_throw(st.e_exotic, "E") * m * m * m; break;
        case 12:
            a = stat_or_throw(st.link_count(5) + st.link_count(6), "e_5 + e_6") *
                pow(m, 5);
            break;
        case 13: a = stat_or_throw(st.loop_count(1), "ell_1") * m / 2; break;
        case 14: a = stat_or_throw(st.link_count(2), "e_2") * m * m; break;
        case 15: a = stat_or_throw(st.link_count(3), "e_3") * m * m * m; break;
        default: throw invalid_move("colour must be in 1..15");
    }
    nominal_bound_set nb;
    nb.a = a;
    nb.b = nominal_b(colour, k);
    nb.alpha = to_real(nb.b) / a;
    nb.hat_alpha = 15 * nb.alpha;
    return nb;
}

}  // namespace mgcount
