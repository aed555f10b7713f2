#pragma once

#include <vector>

#include "mgcount/errors.hpp"

namespace mgcount {

// A multigraph on n labeled vertices stored as a symmetric multiplicity
// matrix; the diagonal entry is the loop multiplicity, which contributes
// twice to the vertex degree.
class multigraph {
public:
    explicit multigraph(int n) : n_(n), m_(static_cast<size_t>(n) * n, 0) {
        if (n <= 0) throw parse_error("multigraph needs at least one vertex");
    }

    static multigraph from_matrix(const std::vector<std::vector<long long>>& rows) {
        int n = static_cast<int>(rows.size());
        multigraph g(n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n)
                throw parse_error("multiplicity matrix must be square");
            for (int j = 0; j < n; ++j) {
                if (rows[i][j] < 0)
                    throw parse_error("multiplicities must be nonnegative");
                if (j < i && rows[i][j] != rows[j][i])
                    throw parse_error("multiplicity matrix must be symmetric");
                g.m_[static_cast<size_t>(i) * n + j] = rows[i][j];
            }
        }
        return g;
    }

    int n() const { return n_; }

    long long get(int i, int j) const { return m_[static_cast<size_t>(i) * n_ + j]; }
    long long loop(int i) const { return get(i, i); }

    void set(int i, int j, long long v) {
        m_[static_cast<size_t>(i) * n_ + j] = v;
        m_[static_cast<size_t>(j) * n_ + i] = v;
    }

    void add(int i, int j, long long delta) { set(i, j, get(i, j) + delta); }

    long long degree(int i) const {
        long long d = 2 * loop(i);
        for (int j = 0; j < n_; ++j) {
            if (j != i) d += get(i, j);
        }
        return d;
    }

    std::vector<int> degrees() const {
        std::vector<int> k(n_);
        for (int i = 0; i < n_; ++i) k[i] = static_cast<int>(degree(i));
        return k;
    }

    std::vector<std::vector<long long>> matrix() const {
        std::vector<std::vector<long long>> rows(n_, std::vector<long long>(n_));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) rows[i][j] = get(i, j);
        return rows;
    }

    bool operator==(const multigraph& o) const { return n_ == o.n_ && m_ == o.m_; }
    bool operator<(const multigraph& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        return m_ < o.m_;
    }

private:
    int n_;
    std::vector<long long> m_;
};

}  // namespace mgcount
