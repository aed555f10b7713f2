#pragma once

#include <random>
#include <string>
#include <vector>

#include "mgcount/asymptotic.hpp"
#include "mgcount/degree_core.hpp"
#include "mgcount/multigraph.hpp"
#include "mgcount/numeric.hpp"

namespace mgcount {

// Real-coefficient polynomial truncated past degree cap; multiplication
// discards higher terms, so powers are exact through z^cap.
struct truncated_series {
    int cap;
    std::vector<Real> coeffs;

    explicit truncated_series(int cap_) : cap(cap_), coeffs(static_cast<size_t>(cap_) + 1, 0) {}

    truncated_series mul(const truncated_series& o) const {
        truncated_series r(cap);
        for (int i = 0; i <= cap; ++i) {
            if (coeffs[static_cast<size_t>(i)] == 0) continue;
            for (int j = 0; i + j <= cap; ++j) {
                r.coeffs[static_cast<size_t>(i + j)] +=
                    coeffs[static_cast<size_t>(i)] * o.coeffs[static_cast<size_t>(j)];
            }
        }
        return r;
    }

    truncated_series pow(long long e) const {
        truncated_series r(cap), base = *this;
        r.coeffs[0] = 1;
        while (e > 0) {
            if (e & 1) r = r.mul(base);
            base = base.mul(base);
            e >>= 1;
        }
        return r;
    }
};

enum class p_mode { solved_exact, asymptotic_pdef };

// The model's entry probability, how it was chosen, and where cofinite
// multiplicity tails were cut (relative mass below 1e-30; -1 when every
// involved set is finite).
struct naive_params {
    Real p;
    p_mode mode = p_mode::solved_exact;
    long long tail_cut = -1;
};

namespace detail {

struct set_sums {
    Real weight = 0;           // sum of p^j over the set
    Real weighted_degree = 0;  // sum of j p^j
    long long tail_cut = -1;   // last degree included for a cofinite set
};

// Geometric sums over a multiplicity set.  Cofinite tails are summed in
// closed form (term-by-term accumulation stalls for p near 1); tail_cut
// reports the degree where terms drop below 1e-30 of the total weight,
// saturating at tail start + 400000 when p is nearly 1.
inline set_sums multiplicity_sums(const multiplicity_set& s, const Real& p) {
    static const Real rel("1e-30");
    set_sums out;
    for (long long j : s.finite_part()) {
        Real t = pow(p, static_cast<int>(j));
        out.weight += t;
        out.weighted_degree += j * t;
    }
    if (s.is_cofinite()) {
        if (!(p > 0 && p < 1))
            throw precondition_violation("cofinite multiplicity support needs p in (0,1)");
        const long long start = *s.tail_from();
        Real pt = pow(p, static_cast<int>(start));
        Real q = 1 - p;
        out.weight += pt / q;
        out.weighted_degree += pt * (start / q + p / (q * q));
        Real thresh = rel * out.weight;
        Real t = pt;
        long long j = start;
        while (t >= thresh && j - start < 400000) {
            t *= p;
            ++j;
        }
        out.tail_cut = j;
    }
    return out;
}

inline truncated_series series_of(const multiplicity_set& s, const Real& p, int cap,
                                  int stride) {
    truncated_series out(cap);
    for (long long j : s.values_up_to(cap / stride)) {
        out.coeffs[static_cast<size_t>(j * stride)] = pow(p, static_cast<int>(j));
    }
    return out;
}

}  // namespace detail

// Mean row sum of the independent-entry model: diagonal entries weigh
// double, the n-1 off-diagonal slots are i.i.d. over J.
inline Real expected_row_sum(const Real& p, int n, const multiplicity_set& J,
                             const multiplicity_set& Jstar) {
    auto off = detail::multiplicity_sums(J, p);
    auto diag = detail::multiplicity_sums(Jstar, p);
    return 2 * diag.weighted_degree / diag.weight +
           (n - 1) * off.weighted_degree / off.weight;
}

// Chooses p: either the bisection root of expected_row_sum = kbar (the mean
// is strictly increasing in p), or the closed two-term expansion.
inline naive_params solve_p0(const Rat& kbar, int n, const multiplicity_set& J,
                             const multiplicity_set& Jstar, p_mode mode) {
    if (kbar <= 0) throw unachievable("target mean row sum must be positive");
    naive_params out;
    out.mode = mode;
    if (mode == p_mode::asymptotic_pdef) {
        const int x2 = J.indicator(2);
        Rat p = kbar / n + (1 - 2 * x2) * kbar * kbar / (Rat(n) * n);
        if (p <= 0 || p >= 1) throw unachievable("expansion leaves (0,1)");
        out.p = to_real(p);
        auto sums = detail::multiplicity_sums(J, out.p);
        auto dsums = detail::multiplicity_sums(Jstar, out.p);
        out.tail_cut = std::max(sums.tail_cut, dsums.tail_cut);
        return out;
    }
    const Real target = to_real(kbar);
    Real lo("1e-40"), hi = Real(1) - Real("1e-18");
    if (expected_row_sum(hi, n, J, Jstar) < target)
        throw unachievable("mean row sum stays below the target on (0,1)");
    for (int it = 0; it < 400; ++it) {
        Real mid = (lo + hi) / 2;
        if (expected_row_sum(mid, n, J, Jstar) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < Real("1e-45")) break;
    }
    out.p = (lo + hi) / 2;
    auto sums = detail::multiplicity_sums(J, out.p);
    auto dsums = detail::multiplicity_sums(Jstar, out.p);
    out.tail_cut = std::max(sums.tail_cut, dsums.tail_cut);
    return out;
}

// The independence estimate p^{-M/2} J(1)^{-C(n,2)} prod_i [z^{k_i}] of
// J(z)^{n-1} J*(z^2), evaluated in log space with series arithmetic capped
// at kmax.
inline estimate g_naive(const degree_sequence& k, const multiplicity_set& J,
                        const multiplicity_set& Jstar, const naive_params& params) {
    validate_instance(k, J, Jstar);
    const int n = k.n();
    const int cap = k.kmax();
    const Real& p = params.p;

    truncated_series jz = detail::series_of(J, p, cap, 1);
    truncated_series jstar = detail::series_of(Jstar, p, cap, 2);
    truncated_series row = jz.pow(n - 1).mul(jstar);

    Real sum_log_coeffs = 0;
    for (int d : k.degrees()) {
        const Real& c = row.coeffs[static_cast<size_t>(d)];
        if (c <= 0)
            throw zero_coefficient("degree " + std::to_string(d) +
                                   " has zero row probability: the estimate is 0");
        sum_log_coeffs += log(c);
    }
    const Real j1 = detail::multiplicity_sums(J, p).weight;
    const long long m = int_to_ll(k.total(), "M");
    const long long pairs = static_cast<long long>(n) * (n - 1) / 2;

    estimate e;
    e.exponent_terms = {
        {"neg_half_m_log_p", -Real(m) / 2 * log(p)},
        {"neg_pairs_log_j1", -Real(pairs) * log(j1)},
        {"sum_log_row_coeffs", sum_log_coeffs},
    };
    e.log_value = e.exponent_total();
    return e;
}

// Exact model probability of one matrix; entries must lie in their
// allowed sets.
inline Real probability_of_matrix(const multigraph& a, const Real& p,
                                  const multiplicity_set& J, const multiplicity_set& Jstar) {
    long long s = 0;
    for (int i = 0; i < a.n(); ++i) {
        if (!Jstar.contains(a.loop(i)))
            throw unsupported_entry("loop multiplicity " + std::to_string(a.loop(i)) +
                                    " not allowed");
        s += a.loop(i);
        for (int j = i + 1; j < a.n(); ++j) {
            if (!J.contains(a.get(i, j)))
                throw unsupported_entry("link multiplicity " + std::to_string(a.get(i, j)) +
                                        " not allowed");
            s += a.get(i, j);
        }
    }
    const Real j1 = detail::multiplicity_sums(J, p).weight;
    const Real jstar1 = detail::multiplicity_sums(Jstar, p).weight;
    const long long pairs = static_cast<long long>(a.n()) * (a.n() - 1) / 2;
    return pow(p, static_cast<int>(s)) /
           (pow(j1, static_cast<int>(pairs)) * pow(jstar1, a.n()));
}

// Draws the independent-entry random matrix: each slot is geometric over
// its support, diagonal from J*, upper triangle from J, mirrored below.
inline multigraph sample_matrix(int n, const Real& p, const multiplicity_set& J,
                                const multiplicity_set& Jstar, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto draw = [&](const multiplicity_set& s) {
        auto sums = detail::multiplicity_sums(s, p);
        Real u = Real(uniform_unit(rng)) * sums.weight;
        Real acc = 0;
        long long last = 0;
        long long limit = s.is_cofinite() ? sums.tail_cut : s.finite_part().back();
        for (long long j = 0; j <= limit; ++j) {
            if (!s.contains(j)) continue;
            acc += pow(p, static_cast<int>(j));
            last = j;
            if (u < acc) return j;
        }
        return last;  // truncated tail mass, relatively below 1e-30
    };
    multigraph g(n);
    for (int i = 0; i < n; ++i) {
        g.set(i, i, draw(Jstar));
        for (int j = i + 1; j < n; ++j) g.set(i, j, draw(J));
    }
    return g;
}

// The naive estimate times sqrt(2) times the four-term comparison exponent
// in the scaled central moments, with p solved exactly.
inline estimate theorem5_prediction(const degree_sequence& k, const multiplicity_set& J,
                                    const multiplicity_set& Jstar) {
    validate_instance(k, J, Jstar);
    const int n = k.n();
    const int x2 = J.indicator(2), x3 = J.indicator(3);
    naive_params params = solve_p0(k.kbar(), n, J, Jstar, p_mode::solved_exact);
    estimate base = g_naive(k, J, Jstar, params);

    const Rat mu2 = k.mu(2), mu3 = k.mu(3);
    const Rat M(k.total());
    const Rat quarter = (1 - mu2) * (1 + 2 * x2 + mu2 * (1 - 2 * x2)) / 4;
    const Rat over_2n = (6 * mu2 * mu3 * (x3 - x2) - mu2 * mu2 * mu2) / (2 * n);
    const Rat over_12m =
        (3 * mu2 * mu2 * (mu2 * mu2 - 2 * mu3) + 2 * mu3 * mu3 * (3 * (x3 - x2) + 1)) /
        (12 * M);
    const Rat over_2n2 = mu2 * mu2 * M * (9 * x3 - 9 * x2 - 1) / (2 * Rat(n) * n);

    estimate e;
    e.exponent_terms = {
        {"log_g_naive", base.log_value},
        {"log_sqrt2", log(Real(2)) / 2},
        {"quarter_term", to_real(quarter)},
        {"over_2n", to_real(over_2n)},
        {"over_12m", to_real(over_12m)},
        {"over_2n2", to_real(over_2n2)},
    };
    e.log_value = e.exponent_total();
    e.error_scale = Rat(static_cast<long long>(k.kmax()) * k.kmax(), n);
    return e;
}

}  // namespace mgcount
