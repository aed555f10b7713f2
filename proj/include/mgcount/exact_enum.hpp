#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "mgcount/degree_core.hpp"
#include "mgcount/multigraph.hpp"
#include "mgcount/thresholds.hpp"

namespace mgcount {

struct count_options {
    long long budget = 0;  // search-node limit; 0 means unlimited
};

// (loops1, links2, links3): the class signature tracked by the pairing
// calculus.  Everything else in a signature-classified multigraph is simple.
struct class_signature {
    long long loops1 = 0;
    long long links2 = 0;
    long long links3 = 0;
};

namespace detail {

struct class_limits {
    long long l1_min = 0, l1_max = -1;  // max -1 means unbounded
    long long e2_min = 0, e2_max = -1;
    long long e3_min = 0, e3_max = -1;
};

// Backtracking over the upper-triangle cells in row-major order, diagonal
// first in each row.  Residual degrees prune the search; completions arrive
// in ascending lexicographic order of the flattened upper triangle.
class cell_search {
public:
    cell_search(const std::vector<int>& k, multiplicity_set loops, multiplicity_set links,
                class_limits lim, count_options opts)
        : n_(static_cast<int>(k.size())),
          loops_(std::move(loops)),
          links_(std::move(links)),
          lim_(lim),
          budget_(opts.budget),
          g_(static_cast<int>(k.size())),
          r_(k.begin(), k.end()) {}

    // visit == nullptr counts; otherwise visits until the callback says stop.
    Int run(const std::function<bool(const multigraph&)>* visit) {
        visit_ = visit;
        count_ = 0;
        nodes_ = 0;
        stopped_ = false;
        descend_row(0);
        return count_;
    }

    long long nodes() const { return nodes_; }

private:
    void charge() {
        if (budget_ > 0 && ++nodes_ > budget_)
            throw budget_exceeded("enumeration exceeded node budget");
    }

    void descend_row(int i) {
        if (stopped_) return;
        if (i == n_) {
            if (l1_ < lim_.l1_min || e2_ < lim_.e2_min || e3_ < lim_.e3_min) return;
            if (visit_) {
                if (!(*visit_)(g_)) stopped_ = true;
            }
            ++count_;
            return;
        }
        for (long long a : loops_.values_up_to(r_[i] / 2)) {
            charge();
            long long next_l1 = l1_ + (a == 1 ? 1 : 0);
            if (lim_.l1_max >= 0 && next_l1 > lim_.l1_max) continue;
            g_.set(i, i, a);
            r_[i] -= 2 * a;
            l1_ = next_l1;
            fill_links(i, i + 1);
            l1_ -= (a == 1 ? 1 : 0);
            r_[i] += 2 * a;
            g_.set(i, i, 0);
            if (stopped_) return;
        }
    }

    // Remaining placeable total for row i over columns [j, n); bails out
    // early once the row residual is reachable.
    bool row_can_finish(int i, int j) const {
        long long need = r_[i];
        if (need == 0) return true;
        long long cap = 0;
        for (int j2 = j; j2 < n_; ++j2) {
            long long c = links_.largest_le(std::min(r_[i], r_[j2]));
            if (c > 0) cap += c;
            if (cap >= need) return true;
        }
        return false;
    }

    void fill_links(int i, int j) {
        if (stopped_) return;
        if (j == n_) {
            if (r_[i] == 0) descend_row(i + 1);
            return;
        }
        if (!row_can_finish(i, j)) return;
        for (long long a : links_.values_up_to(std::min(r_[i], r_[j]))) {
            charge();
            long long next_e2 = e2_ + (a == 2 ? 1 : 0);
            long long next_e3 = e3_ + (a == 3 ? 1 : 0);
            if (lim_.e2_max >= 0 && next_e2 > lim_.e2_max) continue;
            if (lim_.e3_max >= 0 && next_e3 > lim_.e3_max) continue;
            g_.set(i, j, a);
            r_[i] -= a;
            r_[j] -= a;
            e2_ = next_e2;
            e3_ = next_e3;
            fill_links(i, j + 1);
            e2_ -= (a == 2 ? 1 : 0);
            e3_ -= (a == 3 ? 1 : 0);
            r_[i] += a;
            r_[j] += a;
            g_.set(i, j, 0);
            if (stopped_) return;
        }
    }

    int n_;
    multiplicity_set loops_, links_;
    class_limits lim_;
    long long budget_;
    multigraph g_;
    std::vector<long long> r_;
    const std::function<bool(const multigraph&)>* visit_ = nullptr;
    Int count_ = 0;
    long long nodes_ = 0;
    long long l1_ = 0, e2_ = 0, e3_ = 0;
    bool stopped_ = false;
};

}  // namespace detail

// Exact count of multigraphs with degree sequence k, loop multiplicities in
// Jstar, link multiplicities in J.  Depth-first over upper-triangle cells.
inline Int count_exact(const degree_sequence& k, const multiplicity_set& J,
                       const multiplicity_set& Jstar, const count_options& opts = {}) {
    validate_instance(k, J, Jstar);
    detail::cell_search s(k.degrees(), Jstar, J, {}, opts);
    return s.run(nullptr);
}

// Independent strategy: row-by-row dynamic programming memoized on the
// residual degree vector of the not-yet-processed vertices.
inline Int count_exact_dp(const degree_sequence& k, const multiplicity_set& J,
                          const multiplicity_set& Jstar, const count_options& opts = {}) {
    validate_instance(k, J, Jstar);
    const int n = k.n();
    const long long budget = opts.budget;
    long long nodes = 0;
    std::vector<std::map<std::vector<long long>, Int>> memo(n + 1);

    auto charge = [&]() {
        if (budget > 0 && ++nodes > budget)
            throw budget_exceeded("enumeration exceeded node budget");
    };

    // suffix[0] is the residual of vertex i.
    std::function<Int(int, std::vector<long long>&)> solve =
        [&](int i, std::vector<long long>& suffix) -> Int {
        if (i == n) return 1;
        auto& table = memo[i];
        auto found = table.find(suffix);
        if (found != table.end()) return found->second;

        Int total = 0;
        int width = n - i;
        // Fills links from vertex i to vertices i+1..n-1 (suffix slots 1..).
        std::function<void(int, long long)> fill = [&](int slot, long long rem) {
            if (slot == width) {
                if (rem != 0) return;
                std::vector<long long> child(suffix.begin() + 1, suffix.end());
                total += solve(i + 1, child);
                return;
            }
            // Capacity prune over the remaining slots.
            long long cap = 0;
            for (int s2 = slot; s2 < width && cap < rem; ++s2) {
                long long c = J.largest_le(std::min(rem, suffix[s2]));
                if (c > 0) cap += c;
            }
            if (cap < rem) return;
            for (long long a : J.values_up_to(std::min(rem, suffix[slot]))) {
                charge();
                suffix[slot] -= a;
                fill(slot + 1, rem - a);
                suffix[slot] += a;
            }
        };
        for (long long a : Jstar.values_up_to(suffix[0] / 2)) {
            charge();
            fill(1, suffix[0] - 2 * a);
        }
        table.emplace(suffix, total);
        return total;
    };

    std::vector<long long> all(k.degrees().begin(), k.degrees().end());
    return solve(0, all);
}

// All multigraphs of the instance in ascending lexicographic order of the
// flattened upper triangle, truncated at `cap`; second member reports truncation.
inline std::pair<std::vector<multigraph>, bool> enumerate_multigraphs(
    const degree_sequence& k, const multiplicity_set& J, const multiplicity_set& Jstar,
    size_t cap, const count_options& opts = {}) {
    validate_instance(k, J, Jstar);
    std::vector<multigraph> out;
    bool truncated = false;
    std::function<bool(const multigraph&)> visit = [&](const multigraph& g) {
        if (out.size() == cap) {
            truncated = true;
            return false;
        }
        out.push_back(g);
        return true;
    };
    detail::cell_search s(k.degrees(), Jstar, J, {}, opts);
    s.run(&visit);
    return {std::move(out), truncated};
}

// Multigraphs with exactly sig.loops1 simple loops, sig.links2 double links,
// sig.links3 triple links, and every other class simple or absent.
inline Int count_class(const degree_sequence& k, const class_signature& sig,
                       const count_options& opts = {}) {
    detail::class_limits lim;
    lim.l1_min = lim.l1_max = sig.loops1;
    lim.e2_min = lim.e2_max = sig.links2;
    lim.e3_min = lim.e3_max = sig.links3;
    detail::cell_search s(k.degrees(), multiplicity_set::of({0, 1}),
                          multiplicity_set::of({0, 1, 2, 3}), lim, opts);
    return s.run(nullptr);
}

enum class region_kind { g0, g0_minus_y, z };

// |G0|, |G0 - Y| or |Z| for the instance, with the caps taken from `th`.
inline Int count_region(const degree_sequence& k, const multiplicity_set& J,
                        const multiplicity_set& Jstar, region_kind region,
                        const thresholds& th, const count_options& opts = {}) {
    validate_instance(k, J, Jstar);
    if (region == region_kind::g0) {
        detail::cell_search s(k.degrees(), Jstar.with_tail_from(2), J.with_tail_from(4), {},
                              opts);
        return s.run(nullptr);
    }
    std::vector<long long> loop_vals{0};
    if (Jstar.contains(1)) loop_vals.push_back(1);
    std::vector<long long> link_vals{0, 1};
    if (J.contains(2)) link_vals.push_back(2);
    if (J.contains(3)) link_vals.push_back(3);
    detail::class_limits lim;
    if (region == region_kind::g0_minus_y) {
        lim.l1_max = th.n1;
        lim.e2_max = th.n2;
        lim.e3_max = th.n3;
    } else {
        lim.l1_max = th.half_n1();
        lim.e2_max = th.half_n2();
        lim.e3_max = th.half_n3();
    }
    detail::cell_search s(k.degrees(), multiplicity_set(loop_vals, std::nullopt),
                          multiplicity_set(link_vals, std::nullopt), lim, opts);
    return s.run(nullptr);
}

inline Int count_region(const degree_sequence& k, const multiplicity_set& J,
                        const multiplicity_set& Jstar, region_kind region,
                        const count_options& opts = {}) {
    return count_region(k, J, Jstar, region, compute_thresholds(k), opts);
}

}  // namespace mgcount
