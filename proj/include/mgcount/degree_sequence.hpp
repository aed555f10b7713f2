#pragma once

#include <algorithm>
#include <vector>

#include "mgcount/errors.hpp"
#include "mgcount/numeric.hpp"

namespace mgcount {

// A degree sequence with its factorial-moment family M_r = sum_i [k_i]_r.
// Moments are exact; central moments are exact rationals normalized by M.
class degree_sequence {
public:
    explicit degree_sequence(std::vector<int> k) : k_(std::move(k)) {
        if (k_.empty()) throw parse_error("degree sequence must be nonempty");
        for (int v : k_) {
            if (v < 0) throw parse_error("degrees must be nonnegative");
        }
    }

    int n() const { return static_cast<int>(k_.size()); }
    const std::vector<int>& degrees() const { return k_; }
    int kmax() const { return *std::max_element(k_.begin(), k_.end()); }

    Int moment(int r) const {
        Int m = 0;
        for (int v : k_) m += falling_factorial(v, r);
        return m;
    }

    Int total() const { return moment(1); }  // M

    Rat kbar() const { return Rat(total(), n()); }

    // mu_r = (1/M) * sum_i (k_i - kbar)^r; requires M > 0.
    Rat mu(int r) const {
        Int m = total();
        if (m == 0) throw zero_denominator("mu_r undefined for M = 0");
        Rat kb = kbar();
        Rat s = 0;
        for (int v : k_) {
            Rat d = Rat(v) - kb;
            Rat p = 1;
            for (int i = 0; i < r; ++i) p *= d;
            s += p;
        }
        return s / Rat(m);
    }

    bool operator==(const degree_sequence& o) const { return k_ == o.k_; }

private:
    std::vector<int> k_;
};

}  // namespace mgcount
