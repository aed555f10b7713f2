#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mgcount/errors.hpp"
#include "mgcount/numeric.hpp"

namespace mgcount {

// Recurrence n_i = (1/i) A(i) (1 - (i-1)B(i)) (1 + delta_i) n_{i-1}, n_0 = 1,
// with A(i) in the given [A1, A2], B(i) in [B1, B2], perturbations delta_i
// majorised by the gamma series, plus the (K, c) truncation parameters.
// Vectors hold values for i = 1..N (gamma for j = 0..K).
struct product_form_spec {
    long long N = 0;
    long long K = 0;
    Real c = 0;
    Real A1 = 0, A2 = 0;
    Real B1 = 0, B2 = 0;
    std::vector<Real> A, B, delta;
    std::vector<Real> gamma;
};

// Recurrence n_i = (1/i) (A(i) - (i-1)C(i)) n_{i-1}, n_0 = 1, with the
// single contract constant chat; extrema of A and C are derived.
struct difference_form_spec {
    long long N = 0;
    Real chat = 0;
    std::vector<Real> A, C;
};

// Certified envelope around the partial sum: lo <= sum <= hi whenever the
// spec meets its contract.
struct envelope {
    Real sum;
    Real lo;
    Real hi;
};

namespace detail {

// Directed outward rounding: the formulas are evaluated with 50 significant
// digits, then pushed out by a margin dwarfing accumulated roundoff.
inline Real nudge_down(const Real& x) {
    static const Real rel("1e-35"), abs_("1e-45");
    return x - abs(x) * rel - abs_;
}
inline Real nudge_up(const Real& x) {
    static const Real rel("1e-35"), abs_("1e-45");
    return x + abs(x) * rel + abs_;
}

inline void require(bool ok, const std::string& inequality) {
    if (!ok) throw precondition_violation("failed: " + inequality);
}

inline const Real& euler_e() {
    static const Real e = exp(Real(1));
    return e;
}

}  // namespace detail

// Sum and envelope for the product-form recurrence.  Every hypothesis is
// checked; out-of-contract specs are refused rather than given unsound
// bounds.
inline envelope sum_with_bounds_41(const product_form_spec& sp) {
    using detail::require;
    const Real e = detail::euler_e();
    require(sp.N >= 2, "N >= 2");
    require(sp.K >= 0 && sp.K <= sp.N, "0 <= K <= N");
    require(sp.c > 2 * e, "c > 2e");
    require(sp.A1 >= 0, "0 <= A1");
    require(sp.A1 <= sp.A2, "A1 <= A2");
    require(sp.B1 <= sp.B2, "B1 <= B2");
    const size_t n = static_cast<size_t>(sp.N);
    require(sp.A.size() == n && sp.B.size() == n && sp.delta.size() == n,
            "A, B, delta have N entries");
    require(sp.gamma.size() == static_cast<size_t>(sp.K) + 1, "gamma has K+1 entries");
    for (size_t i = 0; i < n; ++i) {
        require(sp.A[i] >= sp.A1 && sp.A[i] <= sp.A2, "A(i) in [A1, A2]");
        require(sp.B[i] >= sp.B1 && sp.B[i] <= sp.B2, "B(i) in [B1, B2]");
    }
    require(sp.A2 * sp.c < Real(sp.N - sp.K + 1), "A*c < N - K + 1");
    require(std::max(abs(sp.B1), abs(sp.B2)) * sp.N < 1, "|B*N| < 1");
    for (const Real& g : sp.gamma) require(g >= 0, "gamma_j >= 0");
    Real delta_cum = 0;
    for (long long i = 1; i <= sp.N; ++i) {
        delta_cum += abs(sp.delta[static_cast<size_t>(i - 1)]);
        Real majorant = 0;
        for (long long j = 0; j <= sp.K; ++j) {
            majorant += sp.gamma[static_cast<size_t>(j)] * to_real(falling_factorial(i, j));
        }
        require(delta_cum <= majorant, "sum |delta_j| <= sum gamma_j [i]_j");
        require(majorant < Real(1) / 5, "sum gamma_j [i]_j < 1/5");
    }

    Real sum = 1, term = 1;
    for (long long i = 1; i <= sp.N; ++i) {
        const size_t ix = static_cast<size_t>(i - 1);
        term *= sp.A[ix] * (1 - (i - 1) * sp.B[ix]) * (1 + sp.delta[ix]) / i;
        sum += term;
    }

    auto gamma_sum = [&](const Real& a) {
        Real s = 0;
        for (long long j = 0; j <= sp.K; ++j) {
            s += sp.gamma[static_cast<size_t>(j)] * pow(3 * a, static_cast<int>(j));
        }
        return s;
    };
    const Real tail = pow(2 * e / sp.c, static_cast<int>(sp.N)) / 4;
    const Real lo =
        exp(sp.A1 - sp.A1 * sp.A1 * sp.B2 / 2 - 4 * gamma_sum(sp.A1)) - tail;
    const Real hi = exp(sp.A2 - sp.A2 * sp.A2 * sp.B1 / 2 +
                        sp.A2 * sp.A2 * sp.A2 * sp.B1 * sp.B1 / 2 +
                        4 * gamma_sum(sp.A2)) +
                    tail;
    return {sum, detail::nudge_down(lo), detail::nudge_up(hi)};
}

// Sum and envelope for the difference-form recurrence.
inline envelope sum_with_bounds_42(const difference_form_spec& sp) {
    using detail::require;
    const Real e = detail::euler_e();
    require(sp.N >= 2, "N >= 2");
    const size_t n = static_cast<size_t>(sp.N);
    require(sp.A.size() == n && sp.C.size() == n, "A, C have N entries");
    require(sp.chat > 0 && sp.chat < Real(1) / 3, "0 < chat < 1/3");
    Real a1 = sp.A[0], a2 = sp.A[0], c1 = sp.C[0], c2 = sp.C[0];
    for (long long i = 1; i <= sp.N; ++i) {
        const size_t ix = static_cast<size_t>(i - 1);
        require(sp.A[ix] >= 0, "A(i) >= 0");
        require(sp.A[ix] - (i - 1) * sp.C[ix] >= 0, "A(i) - (i-1)C(i) >= 0");
        a1 = std::min(a1, sp.A[ix]);
        a2 = std::max(a2, sp.A[ix]);
        c1 = std::min(c1, sp.C[ix]);
        c2 = std::max(c2, sp.C[ix]);
    }
    require(a2 / sp.N <= sp.chat && std::max(abs(c1), abs(c2)) <= sp.chat,
            "max{A/N, |C|} <= chat");

    Real sum = 1, term = 1;
    for (long long i = 1; i <= sp.N; ++i) {
        const size_t ix = static_cast<size_t>(i - 1);
        term *= (sp.A[ix] - (i - 1) * sp.C[ix]) / i;
        sum += term;
    }

    const Real tail = pow(2 * e * sp.chat, static_cast<int>(sp.N));
    const Real lo = exp(a1 - a1 * c2 / 2) - tail;
    const Real hi = exp(a2 - a2 * c1 / 2 + a2 * c1 * c1 / 2) + tail;
    return {sum, detail::nudge_down(lo), detail::nudge_up(hi)};
}

}  // namespace mgcount
