#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace ptower {
namespace gf2 {

using index_list = std::vector<uint32_t>;

// XOR of two strictly increasing index lists.
inline index_list xor_cols(const index_list& a, const index_list& b) {
    index_list out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            out.push_back(a[i++]);
        else if (b[j] < a[i])
            out.push_back(b[j++]);
        else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

// Sparse column-major matrix over GF(2): per column a strictly increasing
// list of nonzero row indices.
class matrix {
  public:
    matrix() = default;
    matrix(uint32_t rows, uint32_t cols) : rows_(rows), cols_(cols), data_(cols) {}

    static matrix identity(uint32_t n) {
        matrix m(n, n);
        for (uint32_t i = 0; i < n; ++i) m.set_col(i, {i});
        return m;
    }

    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }

    const index_list& col(uint32_t j) const { return data_.at(j); }

    void set_col(uint32_t j, index_list entries) {
        if (j >= cols_) throw dimension_mismatch("column index out of range");
        if (!std::is_sorted(entries.begin(), entries.end()) ||
            std::adjacent_find(entries.begin(), entries.end()) != entries.end())
            throw dimension_mismatch("column entries must be strictly increasing");
        if (!entries.empty() && entries.back() >= rows_)
            throw dimension_mismatch("row index out of range");
        data_[j] = std::move(entries);
    }

    uint32_t add_col(index_list entries) {
        cols_++;
        data_.resize(cols_);
        set_col(cols_ - 1, std::move(entries));
        return cols_ - 1;
    }

    bool get(uint32_t i, uint32_t j) const {
        const auto& c = col(j);
        return std::binary_search(c.begin(), c.end(), i);
    }

    bool is_zero() const {
        for (uint32_t j = 0; j < cols_; ++j)
            if (!col(j).empty()) return false;
        return true;
    }

    friend bool operator==(const matrix& a, const matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (uint32_t j = 0; j < a.cols_; ++j)
            if (a.col(j) != b.col(j)) return false;
        return true;
    }

    // Product a*b (columns of the result are XORs of columns of a).
    friend matrix multiply(const matrix& a, const matrix& b) {
        if (a.cols() != b.rows()) throw dimension_mismatch("matrix product shape mismatch");
        matrix out(a.rows(), b.cols());
        for (uint32_t j = 0; j < b.cols(); ++j) {
            index_list acc;
            for (uint32_t k : b.col(j)) acc = xor_cols(acc, a.col(k));
            out.set_col(j, std::move(acc));
        }
        return out;
    }

  private:
    uint32_t rows_ = 0;
    uint32_t cols_ = 0;
    std::vector<index_list> data_;
};

inline uint32_t low(const index_list& c) { return c.back(); }

// Result of left-to-right column reduction: the echelon form, the columns
// that became zero, and the change-of-basis V with reduced = input * V.
struct reduction {
    matrix reduced;
    matrix combination;
    std::vector<uint32_t> zeroed_cols;
    uint32_t rank = 0;
};

// Reduces to column echelon form: every nonzero column ends with a pivot row
// owned by no earlier column. Only earlier columns are added to later ones,
// so the span of every column prefix is preserved.
inline reduction column_reduce(const matrix& m) {
    reduction res;
    res.reduced = m;
    res.combination = matrix::identity(m.cols());
    std::map<uint32_t, uint32_t> pivot_col;
    for (uint32_t j = 0; j < m.cols(); ++j) {
        index_list cur = m.col(j);
        index_list comb = {j};
        while (!cur.empty()) {
            auto it = pivot_col.find(low(cur));
            if (it == pivot_col.end()) break;
            cur = xor_cols(cur, res.reduced.col(it->second));
            comb = xor_cols(comb, res.combination.col(it->second));
        }
        if (cur.empty()) {
            res.zeroed_cols.push_back(j);
        } else {
            pivot_col[low(cur)] = j;
            res.rank++;
        }
        res.reduced.set_col(j, std::move(cur));
        res.combination.set_col(j, std::move(comb));
    }
    return res;
}

inline uint32_t rank(const matrix& m) { return column_reduce(m).rank; }

// Basis of the right kernel, one column per zeroed column of the reduction.
inline matrix kernel_basis(const matrix& m) {
    reduction r = column_reduce(m);
    matrix out(m.cols(), 0);
    for (uint32_t j : r.zeroed_cols) out.add_col(r.combination.col(j));
    return out;
}

// Solves m*x = b; returns any solution or nullopt.
inline std::optional<index_list> solve(const matrix& m, const index_list& b) {
    reduction r = column_reduce(m);
    std::map<uint32_t, uint32_t> pivot_col;
    for (uint32_t j = 0; j < m.cols(); ++j)
        if (!r.reduced.col(j).empty()) pivot_col[low(r.reduced.col(j))] = j;
    index_list residual = b;
    index_list x;
    while (!residual.empty()) {
        auto it = pivot_col.find(low(residual));
        if (it == pivot_col.end()) return std::nullopt;
        residual = xor_cols(residual, r.reduced.col(it->second));
        x = xor_cols(x, r.combination.col(it->second));
    }
    return x;
}

}  // namespace gf2
}  // namespace ptower
