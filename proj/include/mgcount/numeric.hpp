#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <climits>
#include <cmath>
#include <cstdint>
#include <random>

#include "mgcount/errors.hpp"

namespace mgcount {

// Exact integers and rationals carry every count in the library; Real is the
// 50-digit float used wherever a quantity is genuinely irrational.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::cpp_bin_float_50;

// Checked narrowing for quantities that must fit machine arithmetic.
inline long long int_to_ll(const Int& v, const char* what) {
    if (v > Int(LLONG_MAX / 2) || v < Int(LLONG_MIN / 2))
        throw precondition_violation(std::string(what) + " too large for machine arithmetic");
    return static_cast<long long>(v);
}

inline Int factorial(long long n) {
    Int r = 1;
    for (long long i = 2; i <= n; ++i) r *= i;
    return r;
}

// [a]_r = a(a-1)...(a-r+1); zero as soon as the product crosses zero.
inline Int falling_factorial(long long a, long long r) {
    Int p = 1;
    for (long long i = 0; i < r; ++i) p *= (a - i);
    return p;
}

inline Int binomial(long long n, long long r) {
    if (r < 0 || r > n) return 0;
    Int p = 1;
    for (long long i = 1; i <= r; ++i) {
        p *= (n - r + i);
        p /= i;
    }
    return p;
}

inline Int ipow(Int base, unsigned long long e) {
    Int r = 1;
    while (e) {
        if (e & 1ULL) r *= base;
        base *= base;
        e >>= 1ULL;
    }
    return r;
}

// (M-1)!! for even M: the number of perfect matchings of M labeled points.
inline Int double_factorial_odd(long long m_minus_1) {
    Int r = 1;
    for (long long i = m_minus_1; i >= 1; i -= 2) r *= i;
    return r;
}

// Smallest integer x >= 0 with x*x >= v.
inline long long iceil_sqrt(long long v) {
    if (v <= 0) return 0;
    long long x = static_cast<long long>(std::sqrt(static_cast<double>(v)));
    while (x * x >= v) --x;
    while (x * x < v) ++x;
    return x;
}

// Smallest integer x >= 0 with x^q >= v^p, i.e. ceil(v^{p/q}) for v >= 0.
inline long long iceil_pow_frac(long long v, unsigned p, unsigned q) {
    if (v <= 0) return 0;
    Int target = ipow(Int(v), p);
    long long x = static_cast<long long>(
        std::pow(static_cast<double>(v), static_cast<double>(p) / q));
    while (x > 0 && ipow(Int(x), q) >= target) --x;
    while (ipow(Int(x), q) < target) ++x;
    return x;
}

// ceil(ln v) for integer v >= 1.  e^j is irrational for integer j >= 1, so the
// boundary never falls on an integer and 50-digit evaluation is decisive.
inline long long iceil_log_nat(long long v) {
    if (v <= 1) return 0;
    Real lv = log(Real(v));
    long long c = static_cast<long long>(lv);
    while (Real(c) >= lv) --c;
    while (Real(c) < lv) ++c;
    return c;
}

inline Int rat_ceil(const Rat& q) {
    Int n = numerator(q), d = denominator(q);
    Int f = n / d;
    if (f * d != n && n > 0) ++f;
    return f;
}

inline Real to_real(const Int& v) { return Real(v); }
inline Real to_real(const Rat& q) {
    return Real(numerator(q)) / Real(denominator(q));
}

// log of a positive rational without forming huge intermediate floats.
inline Real log_rat(const Rat& q) {
    return log(Real(numerator(q))) - log(Real(denominator(q)));
}

// Draw uniformly from {0, ..., n-1} by rejection; identical streams on every
// platform for a given seed, unlike std::uniform_int_distribution.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace mgcount
