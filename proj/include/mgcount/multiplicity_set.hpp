#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mgcount/errors.hpp"

namespace mgcount {

// A set of admissible multiplicities: finitely many listed values, optionally
// together with a cofinite tail {T, T+1, ...}.  Invariant: `finite_` is sorted,
// duplicate-free, and contains no element >= T when the tail is present.
class multiplicity_set {
public:
    multiplicity_set() = default;

    multiplicity_set(std::vector<long long> finite, std::optional<long long> tail_from)
        : finite_(std::move(finite)), tail_from_(tail_from) {
        std::sort(finite_.begin(), finite_.end());
        finite_.erase(std::unique(finite_.begin(), finite_.end()), finite_.end());
        if (!finite_.empty() && finite_.front() < 0)
            throw parse_error("multiplicity sets contain nonnegative values only");
        if (tail_from_) {
            if (*tail_from_ < 0)
                throw parse_error("cofinite tail must start at a nonnegative value");
            while (!finite_.empty() && finite_.back() >= *tail_from_) finite_.pop_back();
            // Absorb values that merely extend the tail downwards.
            while (!finite_.empty() && finite_.back() + 1 == *tail_from_) {
                --*tail_from_;
                finite_.pop_back();
            }
        }
        if (finite_.empty() && !tail_from_)
            throw parse_error("multiplicity set must be nonempty");
    }

    static multiplicity_set of(std::initializer_list<long long> vals) {
        return multiplicity_set(std::vector<long long>(vals), std::nullopt);
    }

    static multiplicity_set with_tail(std::initializer_list<long long> vals, long long tail) {
        return multiplicity_set(std::vector<long long>(vals), tail);
    }

    // Full support {0, 1, 2, ...}.
    static multiplicity_set all() { return multiplicity_set({}, 0); }

    // Textual form "0,1" or "0,1,+4" where "+T" is the cofinite tail start.
    static multiplicity_set parse(const std::string& text) {
        std::vector<long long> vals;
        std::optional<long long> tail;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) throw parse_error("empty item in multiplicity set '" + text + "'");
            try {
                if (item.front() == '+') {
                    if (tail) throw parse_error("two tails in multiplicity set '" + text + "'");
                    tail = std::stoll(item.substr(1));
                } else {
                    vals.push_back(std::stoll(item));
                }
            } catch (const std::invalid_argument&) {
                throw parse_error("bad multiplicity item '" + item + "'");
            } catch (const std::out_of_range&) {
                throw parse_error("multiplicity item out of range '" + item + "'");
            }
        }
        if (vals.empty() && !tail)
            throw parse_error("empty multiplicity set '" + text + "'");
        return multiplicity_set(std::move(vals), tail);
    }

    std::string to_string() const {
        std::ostringstream out;
        bool first = true;
        for (long long v : finite_) {
            if (!first) out << ',';
            out << v;
            first = false;
        }
        if (tail_from_) {
            if (!first) out << ',';
            out << '+' << *tail_from_;
        }
        return out.str();
    }

    bool contains(long long j) const {
        if (j < 0) return false;
        if (tail_from_ && j >= *tail_from_) return true;
        return std::binary_search(finite_.begin(), finite_.end(), j);
    }

    int indicator(long long j) const { return contains(j) ? 1 : 0; }

    bool is_cofinite() const { return tail_from_.has_value(); }
    std::optional<long long> tail_from() const { return tail_from_; }
    const std::vector<long long>& finite_part() const { return finite_; }

    long long smallest() const {
        if (!finite_.empty()) return finite_.front();
        return *tail_from_;
    }

    // The two smallest elements, for support reduction.
    std::pair<long long, long long> smallest_two() const {
        std::vector<long long> low;
        for (long long v : finite_) {
            low.push_back(v);
            if (low.size() == 2) return {low[0], low[1]};
        }
        if (tail_from_) {
            low.push_back(*tail_from_);
            if (low.size() == 2) return {low[0], low[1]};
            return {*tail_from_, *tail_from_ + 1};
        }
        throw unsupported_support("set has fewer than two elements: " + to_string());
    }

    // Largest element <= cap, or -1 if none.
    long long largest_le(long long cap) const {
        long long best = -1;
        if (tail_from_ && cap >= *tail_from_) return cap;
        auto it = std::upper_bound(finite_.begin(), finite_.end(), cap);
        if (it != finite_.begin()) best = *std::prev(it);
        return best;
    }

    // {v - delta : v in S, v >= delta}; requires every element to stay >= 0.
    multiplicity_set shifted_down(long long delta) const {
        std::vector<long long> vals;
        for (long long v : finite_) {
            if (v - delta < 0)
                throw infeasible_shift("shift drives multiplicity below zero");
            vals.push_back(v - delta);
        }
        std::optional<long long> tail;
        if (tail_from_) {
            if (*tail_from_ - delta < 0)
                throw infeasible_shift("shift drives cofinite tail below zero");
            tail = *tail_from_ - delta;
        }
        return multiplicity_set(std::move(vals), tail);
    }

    // S united with {from, from+1, ...}.
    multiplicity_set with_tail_from(long long from) const {
        long long t = tail_from_ ? std::min(*tail_from_, from) : from;
        return multiplicity_set(finite_, t);
    }

    // S intersected with {0, ..., cap}, returned as plain values.
    std::vector<long long> values_up_to(long long cap) const {
        std::vector<long long> vals;
        for (long long v : finite_) {
            if (v > cap) break;
            vals.push_back(v);
        }
        if (tail_from_) {
            for (long long v = *tail_from_; v <= cap; ++v) vals.push_back(v);
        }
        return vals;
    }

    bool operator==(const multiplicity_set& o) const {
        return finite_ == o.finite_ && tail_from_ == o.tail_from_;
    }

private:
    std::vector<long long> finite_;
    std::optional<long long> tail_from_;
};

}  // namespace mgcount
