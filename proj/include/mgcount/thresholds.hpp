#pragma once

#include <climits>

#include "mgcount/degree_sequence.hpp"
#include "mgcount/multigraph.hpp"
#include "mgcount/multiplicity_set.hpp"
#include "mgcount/numeric.hpp"

namespace mgcount {

// Cutoffs that drive the switching priority rule and the Y/Z regions.
// n1/n2/n3 cap the counts of simple loops, double links, and triple links;
// the remaining fields are the per-colour trigger levels.
struct thresholds {
    long long m = 0;             // M, the total degree
    int kmax = 0;
    long long n1 = 0, n2 = 0, n3 = 0;
    long long log_m = 0;         // ceil(ln M)
    long long sqrt_m = 0;        // ceil(M^{1/2})
    long long three_sqrt_m = 0;  // ceil(3 M^{1/2})
    long long m56 = 0;           // ceil(M^{5/6})
    long long sqrt_kmax = 0;     // ceil(kmax^{1/2})
    long long cap4 = 0;          // max{4, ceil(kmax^{1/2})}
    long long c4_level = 0;      // ceil(4 kmax^{1/2} M^{1/2})
    long long c5_level = 0;      // ceil(3 kmax M^{1/2})

    long long half_n1() const { return (n1 + 1) / 2; }
    long long half_n2() const { return (n2 + 1) / 2; }
    long long half_n3() const { return (n3 + 1) / 2; }
};

inline thresholds compute_thresholds(const degree_sequence& k) {
    thresholds t;
    t.m = int_to_ll(k.total(), "M");
    t.kmax = k.kmax();
    if (t.m == 0) {
        // Edgeless instance: the family is the single empty graph, every class
        // count is zero, and no trigger level can fire.  The ratios below would
        // divide by M, so return the all-zero caps directly.
        t.cap4 = 4;
        return t;
    }
    long long logm = iceil_log_nat(t.m);
    Int m2 = k.moment(2), m3 = k.moment(3);
    Int m = k.total();
    t.log_m = logm;
    t.n1 = std::max(logm, int_to_ll(rat_ceil(Rat(480 * m2, m)), "N1"));
    t.n2 = std::max(logm, int_to_ll(rat_ceil(Rat(240 * m2 * m2, m * m)), "N2"));
    t.n3 = std::max(logm, int_to_ll(rat_ceil(Rat(240 * m3 * m3, m * m * m)), "N3"));
    t.sqrt_m = iceil_sqrt(t.m);
    t.three_sqrt_m = iceil_sqrt(9 * t.m);
    t.m56 = iceil_pow_frac(t.m, 5, 6);
    t.sqrt_kmax = iceil_sqrt(t.kmax);
    t.cap4 = std::max<long long>(4, t.sqrt_kmax);
    t.c4_level = iceil_sqrt(16LL * t.kmax * t.m);
    t.c5_level = iceil_sqrt(9LL * t.kmax * t.kmax * t.m);
    return t;
}

// Membership in the widened family G0, which relaxes the instance by also
// allowing loop multiplicities >= 2 and link multiplicities >= 4.
inline bool in_g0(const multigraph& q, const multiplicity_set& J, const multiplicity_set& Jstar) {
    int n = q.n();
    for (int i = 0; i < n; ++i) {
        long long d = q.loop(i);
        if (d >= 1 && d < 2 && !Jstar.contains(d)) return false;
        for (int j = i + 1; j < n; ++j) {
            long long v = q.get(i, j);
            if (v >= 1 && v < 4 && !J.contains(v)) return false;
        }
    }
    return true;
}

// True when no loop has multiplicity >= 2 and no link has multiplicity >= 4.
inline bool no_heavy_classes(const multigraph& q) {
    int n = q.n();
    for (int i = 0; i < n; ++i) {
        if (q.loop(i) >= 2) return false;
        for (int j = i + 1; j < n; ++j) {
            if (q.get(i, j) >= 4) return false;
        }
    }
    return true;
}

struct light_class_tally {
    long long loops1 = 0;  // loops of multiplicity exactly 1
    long long links2 = 0;  // links of multiplicity exactly 2
    long long links3 = 0;  // links of multiplicity exactly 3
};

inline light_class_tally tally_light_classes(const multigraph& q) {
    light_class_tally t;
    int n = q.n();
    for (int i = 0; i < n; ++i) {
        if (q.loop(i) == 1) ++t.loops1;
        for (int j = i + 1; j < n; ++j) {
            long long v = q.get(i, j);
            if (v == 2) ++t.links2;
            if (v == 3) ++t.links3;
        }
    }
    return t;
}

inline bool in_g0_minus_y(const multigraph& q, const multiplicity_set& J,
                          const multiplicity_set& Jstar, const thresholds& th) {
    if (!in_g0(q, J, Jstar) || !no_heavy_classes(q)) return false;
    auto t = tally_light_classes(q);
    return t.loops1 <= th.n1 && t.links2 <= th.n2 && t.links3 <= th.n3;
}

inline bool in_z(const multigraph& q, const multiplicity_set& J,
                 const multiplicity_set& Jstar, const thresholds& th) {
    if (!in_g0(q, J, Jstar) || !no_heavy_classes(q)) return false;
    auto t = tally_light_classes(q);
    return t.loops1 <= th.half_n1() && t.links2 <= th.half_n2() && t.links3 <= th.half_n3();
}

}  // namespace mgcount
