#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "mgcount/degree_sequence.hpp"
#include "mgcount/exact_enum.hpp"
#include "mgcount/multigraph.hpp"
#include "mgcount/numeric.hpp"

namespace mgcount {

// A perfect matching of M labeled points grouped into cells of sizes k_i.
// Points are 1-based; point p lives in the cell whose offset range covers p.
struct pairing {
    std::vector<int> degrees;
    std::vector<std::pair<int, int>> pairs;

    long long total_points() const {
        return std::accumulate(degrees.begin(), degrees.end(), 0LL);
    }

    void validate() const {
        long long m = total_points();
        if (m % 2 != 0) throw parse_error("pairing needs an even number of points");
        if (static_cast<long long>(pairs.size()) * 2 != m)
            throw parse_error("pairing must cover every point exactly once");
        std::vector<char> seen(static_cast<size_t>(m) + 1, 0);
        for (auto [a, b] : pairs) {
            if (a < 1 || b < 1 || a > m || b > m || a == b)
                throw parse_error("pairing contains an out-of-range or degenerate pair");
            if (seen[a] || seen[b]) throw parse_error("pairing repeats a point");
            seen[a] = seen[b] = 1;
        }
    }
};

// |C(k)| = M!/((M/2)! 2^{M/2}): perfect matchings of M labeled points.
inline Int total_pairings(long long m) {
    if (m % 2 != 0) return 0;
    return double_factorial_odd(m - 1);
}

// Collapse cells to vertices: pairs inside cell i become loops, pairs across
// cells become link multiplicity.
inline multigraph project(const pairing& p) {
    int n = static_cast<int>(p.degrees.size());
    std::vector<long long> cell_end(n);
    long long acc = 0;
    for (int i = 0; i < n; ++i) {
        acc += p.degrees[i];
        cell_end[i] = acc;
    }
    auto cell_of = [&](long long point) {
        int lo = 0, hi = n - 1;
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (point <= cell_end[mid])
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    };
    multigraph g(n);
    for (auto [a, b] : p.pairs) g.add(cell_of(a), cell_of(b), 1);
    return g;
}

// Number of pairings that project to G:
//   prod_i k_i! / ( prod_{i<j} a_ij! * prod_i 2^{a_ii} a_ii! ).
inline Int pairings_of(const multigraph& g) {
    Int num = 1;
    for (int d : g.degrees()) num *= factorial(d);
    Int den = 1;
    for (int i = 0; i < g.n(); ++i) {
        den *= ipow(2, static_cast<unsigned long long>(g.loop(i)));
        den *= factorial(g.loop(i));
        for (int j = i + 1; j < g.n(); ++j) den *= factorial(g.get(i, j));
    }
    Int q = num / den;
    return q;
}

// w(l,d,t) = 2^{l+d} 6^t |C_{l,d,t}| = prod_i k_i! * count_class(k, (l,d,t)).
// C_{l,d,t} is the class of pairings whose projection has l simple loops,
// d double links, t triple links, and nothing heavier.
inline Int w_weight(const degree_sequence& k, const class_signature& sig,
                    const count_options& opts = {}) {
    Int f = 1;
    for (int d : k.degrees()) f *= factorial(d);
    return f * count_class(k, sig, opts);
}

// Uniform random perfect matching: repeatedly match the first free point
// with a uniformly chosen other free point.
inline pairing sample_pairing(const std::vector<int>& degrees, std::uint64_t seed) {
    long long m = std::accumulate(degrees.begin(), degrees.end(), 0LL);
    if (m % 2 != 0) throw odd_total_degree("cannot pair an odd number of points");
    std::mt19937_64 rng(seed);
    std::vector<int> free_points(m);
    std::iota(free_points.begin(), free_points.end(), 1);
    pairing p;
    p.degrees = degrees;
    while (!free_points.empty()) {
        int a = free_points.front();
        free_points.erase(free_points.begin());
        std::uint64_t idx = uniform_below(rng, free_points.size());
        int b = free_points[idx];
        free_points.erase(free_points.begin() + static_cast<long long>(idx));
        p.pairs.emplace_back(a, b);
    }
    return p;
}

}  // namespace mgcount
