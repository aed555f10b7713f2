#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mgcount/degree_core.hpp"
#include "mgcount/degree_sequence.hpp"
#include "mgcount/multiplicity_set.hpp"
#include "mgcount/numeric.hpp"

namespace mgcount {

// An asymptotic value carried as an exact rational leading factor times
// exp(sum of named exponent terms); log_value folds both together.  The
// attached error_scale is the estimate's own error class (kmax^3/M or
// k^2/n), so consumers can build tolerance-aware comparisons.
struct estimate {
    Real log_value = 0;
    Rat leading_term = 1;
    std::vector<std::pair<std::string, Real>> exponent_terms;
    Rat error_scale = 0;

    Real exponent_total() const {
        Real t = 0;
        for (const auto& [name, v] : exponent_terms) t += v;
        return t;
    }
    // Presentation-edge float; the leading factorials overflow doubles
    // quickly, so prefer log_value for arithmetic.
    Real value() const { return exp(log_value); }
};

namespace detail {

inline Rat pairing_leading(const Int& m) {
    long long ml = int_to_ll(m, "M");
    return Rat(factorial(ml)) /
           Rat(factorial(ml / 2) * ipow(Int(2), static_cast<unsigned long long>(ml / 2)));
}

inline estimate finish(estimate e) {
    e.log_value = log_rat(e.leading_term) + e.exponent_total();
    return e;
}

}  // namespace detail

// The five-term degree-sequence formula with loop/link gates.
inline estimate theorem1_estimate(const degree_sequence& k, const multiplicity_set& J,
                                  const multiplicity_set& Jstar) {
    validate_instance(k, J, Jstar);
    const Int m = k.total();
    if (m < 2) throw zero_denominator("estimate needs total degree at least 2");
    const int x2 = J.indicator(2), x3 = J.indicator(3), y1 = Jstar.indicator(1);
    const Rat M(m), M2(k.moment(2)), M3(k.moment(3));

    estimate e;
    Rat prod_fact = 1;
    for (int d : k.degrees()) prod_fact *= Rat(factorial(d));
    e.leading_term = detail::pairing_leading(m) / prod_fact;
    e.exponent_terms = {
        {"loop_gate", to_real(Rat(2 * y1 - 1, 2) * M2 / M)},
        {"double_link_gate", to_real(Rat(2 * x2 - 1, 2) * M2 * M2 / (2 * M * M))},
        {"m2_quartic", to_real(M2 * M2 * M2 * M2 / (4 * M * M * M * M * M))},
        {"m2_m3_cross", to_real(-M2 * M2 * M3 / (2 * M * M * M * M))},
        {"triple_link_gate",
         to_real(Rat(3 * (x3 - x2) + 1, 3) * M3 * M3 / (2 * M * M * M))},
    };
    e.error_scale = Rat(ipow(Int(k.kmax()), 3)) / Rat(m);
    return detail::finish(e);
}

// The regular-sequence specialization: exponent -Q(k, n) split into its
// n-free and 1/n parts.
inline estimate corollary_regular_estimate(int kreg, int n, const multiplicity_set& J,
                                           const multiplicity_set& Jstar) {
    if (kreg < 0 || n <= 0) throw parse_error("regular instance needs k >= 0, n >= 1");
    degree_sequence k(std::vector<int>(static_cast<size_t>(n), kreg));
    validate_instance(k, J, Jstar);
    const int x2 = J.indicator(2), x3 = J.indicator(3), y1 = Jstar.indicator(1);
    const long long kk = kreg;
    const int sign_x2 = x2 ? -1 : 1, sign_y1 = y1 ? -1 : 1;
    const Rat q_const = Rat(kk - 1, 4) * (sign_x2 * Rat(kk - 1) + 2 * sign_y1);
    const Rat q_over_n = Rat(kk * kk * kk * (6 * x2 - 6 * x3 + 1), 12 * n);

    estimate e;
    const Int m = k.total();
    e.leading_term =
        detail::pairing_leading(m) / Rat(ipow(factorial(kreg), static_cast<unsigned long long>(n)));
    e.exponent_terms = {
        {"q_constant", to_real(-q_const)},
        {"q_over_n", to_real(-q_over_n)},
    };
    e.error_scale = Rat(kk * kk, n);
    return detail::finish(e);
}

// Leading pairing count with the no-loop no-multiple correction exponent;
// no division by the cell factorials.
inline estimate simple_pairing_asymptotic(const degree_sequence& k) {
    const Int m = k.total();
    if (m % 2 != 0) throw odd_total_degree("total degree must be even");
    estimate e;
    e.leading_term = m == 0 ? Rat(1) : detail::pairing_leading(m);
    if (m > 0) {
        const Rat M(m), M2(k.moment(2)), M3(k.moment(3));
        e.exponent_terms = {
            {"m2_over_2m", to_real(-M2 / (2 * M))},
            {"m2sq_over_4m2", to_real(-M2 * M2 / (4 * M * M))},
            {"m2sq_m3_cross", to_real(-M2 * M2 * M3 / (2 * M * M * M * M))},
            {"m2_quartic", to_real(M2 * M2 * M2 * M2 / (4 * M * M * M * M * M))},
            {"m3sq_over_6m3", to_real(M3 * M3 / (6 * M * M * M))},
        };
        e.error_scale = Rat(ipow(Int(k.kmax()), 3)) / Rat(m);
    }
    return detail::finish(e);
}

// The three multiplicative corrections restoring loops, double links, and
// triple links, each switched by its gate.  Composed with
// simple_pairing_asymptotic and the cell factorials this reproduces
// theorem1_estimate exactly.
inline estimate correction_factors(const degree_sequence& k, const multiplicity_set& J,
                                   const multiplicity_set& Jstar) {
    const int x2 = J.indicator(2), x3 = J.indicator(3), y1 = Jstar.indicator(1);
    const Int m = k.total();
    estimate e;
    if (m > 0) {
        const Rat M(m), M2(k.moment(2)), M3(k.moment(3));
        e.exponent_terms = {
            {"triple_links_open", to_real(x3 * M3 * M3 / (2 * M * M * M))},
            {"loops_open", to_real(y1 * M2 / M)},
            {"double_links_open",
             to_real(x2 * (M2 * M2 / (2 * M * M) - M3 * M3 / (2 * M * M * M)))},
        };
        e.error_scale = Rat(ipow(Int(k.kmax()), 3)) / Rat(m);
    }
    return detail::finish(e);
}

}  // namespace mgcount
