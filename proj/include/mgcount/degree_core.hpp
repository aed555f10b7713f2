#pragma once

#include <string>

#include "mgcount/degree_sequence.hpp"
#include "mgcount/multiplicity_set.hpp"

namespace mgcount {

// Admissibility of an instance (k, J, J*): total degree even, 0 and 1 link
// multiplicities available, 0 loop multiplicity available.
inline void validate_instance(const degree_sequence& k, const multiplicity_set& J,
                              const multiplicity_set& Jstar) {
    if (k.total() % 2 != 0)
        throw odd_total_degree("sum of degrees is odd");
    if (!J.contains(0) || !J.contains(1))
        throw missing_support("link multiplicity set must contain 0 and 1");
    if (!Jstar.contains(0))
        throw missing_support("loop multiplicity set must contain 0");
}

struct reduced_instance {
    degree_sequence k;
    multiplicity_set J;
    multiplicity_set Jstar;
    long long loop_shift;   // s = min J*
    long long link_shift;   // t, with {t, t+1} the two smallest elements of J
};

// Normalizes an instance so that 0,1 in J and 0 in J*: subtract s from every
// loop slot, t from every link slot, and 2s + (n-1)t from every degree.
// The bijection pairs each graph with its entrywise-shifted image.
inline reduced_instance reduce_support(const degree_sequence& k, const multiplicity_set& J,
                                       const multiplicity_set& Jstar) {
    auto [t, t1] = J.smallest_two();
    if (t1 != t + 1)
        throw unsupported_support("two smallest link multiplicities must be consecutive, got " +
                                  std::to_string(t) + " and " + std::to_string(t1));
    long long s = Jstar.smallest();
    long long n = k.n();
    std::vector<int> shifted(k.n());
    for (int i = 0; i < k.n(); ++i) {
        long long v = k.degrees()[i] - 2 * s - (n - 1) * t;
        if (v < 0)
            throw infeasible_shift("degree " + std::to_string(k.degrees()[i]) +
                                   " too small for support shift");
        shifted[i] = static_cast<int>(v);
    }
    return reduced_instance{degree_sequence(std::move(shifted)), J.shifted_down(t),
                            Jstar.shifted_down(s), s, t};
}

}  // namespace mgcount
