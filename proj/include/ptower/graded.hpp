#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gf2.hpp"
#include "poset.hpp"

namespace ptower {

// A row or column label of a graded matrix: a display name plus the grade of
// the elementary projective summand it stands for.
struct label {
    std::string name;
    grade_id grade;

    friend bool operator==(const label& a, const label& b) {
        return a.grade == b.grade && a.name == b.name;
    }
    friend bool operator<(const label& a, const label& b) {
        if (a.grade != b.grade) return a.grade < b.grade;
        return a.name < b.name;
    }
};

// A morphism of projective modules: a GF(2) matrix whose rows and columns
// carry grades, with entries allowed only where row grade <= column grade.
class graded_matrix {
  public:
    graded_matrix() = default;

    graded_matrix(const poset* p, std::vector<label> row_labels, std::vector<label> col_labels,
                  gf2::matrix entries)
        : poset_(p),
          rows_(std::move(row_labels)),
          cols_(std::move(col_labels)),
          entries_(std::move(entries)) {
        if (entries_.rows() != rows_.size() || entries_.cols() != cols_.size())
            throw dimension_mismatch("label/matrix shape mismatch");
        check_unique(rows_, "row");
        check_unique(cols_, "column");
        for (uint32_t j = 0; j < entries_.cols(); ++j)
            for (uint32_t i : entries_.col(j))
                if (!p->leq(rows_[i].grade, cols_[j].grade))
                    throw grading_error("entry (" + rows_[i].name + "@" + p->name(rows_[i].grade) +
                                        ", " + cols_[j].name + "@" + p->name(cols_[j].grade) +
                                        ") violates the grading");
    }

    const poset& base() const { return *poset_; }
    const std::vector<label>& row_labels() const { return rows_; }
    const std::vector<label>& col_labels() const { return cols_; }
    const gf2::matrix& entries() const { return entries_; }
    uint32_t rows() const { return entries_.rows(); }
    uint32_t cols() const { return entries_.cols(); }

    // Pointwise evaluation at x: the submatrix of rows/columns whose grade is
    // <= x, in label order, together with the index maps back to the full
    // matrix.
    struct restriction {
        gf2::matrix m;
        std::vector<uint32_t> row_ids;
        std::vector<uint32_t> col_ids;
    };

    restriction restrict_at(grade_id x) const {
        restriction r;
        std::vector<uint32_t> row_pos(rows_.size(), UINT32_MAX);
        for (uint32_t i = 0; i < rows_.size(); ++i)
            if (poset_->leq(rows_[i].grade, x)) {
                row_pos[i] = static_cast<uint32_t>(r.row_ids.size());
                r.row_ids.push_back(i);
            }
        for (uint32_t j = 0; j < cols_.size(); ++j)
            if (poset_->leq(cols_[j].grade, x)) r.col_ids.push_back(j);
        r.m = gf2::matrix(static_cast<uint32_t>(r.row_ids.size()),
                          static_cast<uint32_t>(r.col_ids.size()));
        for (uint32_t j = 0; j < r.col_ids.size(); ++j) {
            gf2::index_list entries;
            for (uint32_t i : entries_.col(r.col_ids[j])) entries.push_back(row_pos[i]);
            r.m.set_col(j, std::move(entries));
        }
        return r;
    }

    friend bool operator==(const graded_matrix& a, const graded_matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

  private:
    static void check_unique(const std::vector<label>& labels, const char* what) {
        std::set<label> seen;
        for (const auto& l : labels)
            if (!seen.insert(l).second)
                throw grading_error(std::string("duplicate ") + what + " label '" + l.name + "'");
    }

    const poset* poset_ = nullptr;
    std::vector<label> rows_;
    std::vector<label> cols_;
    gf2::matrix entries_;
};

inline graded_matrix multiply(const graded_matrix& a, const graded_matrix& b) {
    if (a.col_labels() != b.row_labels())
        throw dimension_mismatch("graded product: column labels of a differ from row labels of b");
    return graded_matrix(&a.base(), a.row_labels(), b.col_labels(),
                         multiply(a.entries(), b.entries()));
}

// Horizontal concatenation (shared row labels).
inline graded_matrix hconcat(const graded_matrix& a, const graded_matrix& b) {
    if (a.row_labels() != b.row_labels())
        throw dimension_mismatch("hconcat: row labels differ");
    std::vector<label> cols = a.col_labels();
    cols.insert(cols.end(), b.col_labels().begin(), b.col_labels().end());
    gf2::matrix m(a.rows(), a.cols() + b.cols());
    for (uint32_t j = 0; j < a.cols(); ++j) m.set_col(j, a.entries().col(j));
    for (uint32_t j = 0; j < b.cols(); ++j) m.set_col(a.cols() + j, b.entries().col(j));
    return graded_matrix(&a.base(), a.row_labels(), std::move(cols), std::move(m));
}

inline graded_matrix zero_graded(const poset* p, std::vector<label> rows, std::vector<label> cols) {
    gf2::matrix m(static_cast<uint32_t>(rows.size()), static_cast<uint32_t>(cols.size()));
    for (uint32_t j = 0; j < m.cols(); ++j) m.set_col(j, {});
    return graded_matrix(p, std::move(rows), std::move(cols), std::move(m));
}

}  // namespace ptower
