#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "graded.hpp"
#include "pirep.hpp"

namespace ptower {

// A projective cover of the kernel of a graded matrix: new columns are found
// grade by grade as kernel vectors independent of everything pushed forward
// from below. The returned matrix maps the cover into the domain of m.
inline graded_matrix graded_kernel_cover(const graded_matrix& m, const std::string& prefix) {
    const poset& p = m.base();
    struct col {
        gf2::index_list vec;  // over the columns of m
        grade_id grade;
    };
    std::vector<col> cols;

    for (grade_id x : p.linear_extension()) {
        auto r = m.restrict_at(x);
        gf2::matrix kb = gf2::kernel_basis(r.m);
        if (kb.cols() == 0) continue;
        // echelon of the cover columns with grade strictly below x
        std::map<uint32_t, gf2::index_list> pivots;
        auto insert = [&](gf2::index_list v) -> gf2::index_list {
            while (!v.empty()) {
                auto it = pivots.find(gf2::low(v));
                if (it == pivots.end()) break;
                v = gf2::xor_cols(v, it->second);
            }
            if (!v.empty()) pivots[gf2::low(v)] = v;
            return v;
        };
        for (const auto& c : cols)
            if (p.lt(c.grade, x)) insert(c.vec);
        for (uint32_t j = 0; j < kb.cols(); ++j) {
            gf2::index_list v;
            for (uint32_t i : kb.col(j)) v.push_back(r.col_ids[i]);
            gf2::index_list reduced = insert(std::move(v));
            if (!reduced.empty()) cols.push_back({std::move(reduced), x});
        }
    }

    std::vector<label> col_labels;
    gf2::matrix entries(m.cols(), static_cast<uint32_t>(cols.size()));
    for (uint32_t j = 0; j < cols.size(); ++j) {
        col_labels.push_back({prefix + std::to_string(j), cols[j].grade});
        entries.set_col(j, cols[j].vec);
    }
    return graded_matrix(&p, m.col_labels(), std::move(col_labels), std::move(entries));
}

struct kernel_resolution_t {
    graded_matrix u0;  // cover of ker q0, mapping into the domain of q0
    graded_matrix u1;  // cover of ker u0: a presentation of ker q0
};

inline kernel_resolution_t kernel_resolution(const graded_matrix& q0) {
    kernel_resolution_t kr;
    kr.u0 = graded_kernel_cover(q0, "k");
    kr.u1 = graded_kernel_cover(kr.u0, "kk");
    return kr;
}

// Lift of q1 through the kernel cover: u0 * s = q1, solved column by column
// under the grading constraints. u0 is a general graded matrix here, so this
// uses plain elimination rather than the multigraph solver.
inline graded_matrix lift_s(const graded_matrix& q1, const kernel_resolution_t& kr) {
    const poset& p = q1.base();
    const graded_matrix& u0 = kr.u0;
    if (u0.row_labels() != q1.row_labels())
        throw dimension_mismatch("kernel lift: domain labels do not match");
    gf2::matrix s(u0.cols(), q1.cols());
    for (uint32_t j = 0; j < q1.cols(); ++j) {
        grade_id target = q1.col_labels()[j].grade;
        std::vector<uint32_t> allowed;
        for (uint32_t k = 0; k < u0.cols(); ++k)
            if (p.leq(u0.col_labels()[k].grade, target)) allowed.push_back(k);
        gf2::matrix sub(u0.rows(), static_cast<uint32_t>(allowed.size()));
        for (uint32_t k = 0; k < allowed.size(); ++k) sub.set_col(k, u0.entries().col(allowed[k]));
        auto sol = gf2::solve(sub, q1.entries().col(j));
        if (!sol)
            throw inconsistent_system("column " + q1.col_labels()[j].name +
                                      " does not lift through the kernel cover");
        gf2::index_list col;
        for (uint32_t k : *sol) col.push_back(allowed[k]);
        std::sort(col.begin(), col.end());
        s.set_col(j, std::move(col));
    }
    return graded_matrix(&p, u0.col_labels(), q1.col_labels(), std::move(s));
}

struct homology_presentation_t {
    graded_matrix relations;  // rows: homology generators, cols: relations
    bool minimized = false;

    const std::vector<label>& generators() const { return relations.row_labels(); }
};

namespace detail {

inline std::vector<uint32_t> coker_dims(const graded_matrix& m) {
    const poset& p = m.base();
    std::vector<uint32_t> out(p.node_count());
    for (grade_id x = 0; x < p.node_count(); ++x) {
        auto r = m.restrict_at(x);
        out[x] = r.m.rows() - gf2::rank(r.m);
    }
    return out;
}

}  // namespace detail

// The presentation of the middle homology of a pirep: generators are a
// kernel cover of d_out, relations are the kernel's own relations plus the
// lifted columns of d_in. With minimize, superfluous relation columns are
// dropped (grade-respecting reduction) and unit columns whose entry joins a
// generator and a relation of the same grade cancel the pair.
inline homology_presentation_t homology_presentation(const pirep& pr, bool minimize = true) {
    kernel_resolution_t kr = kernel_resolution(pr.d_out);
    graded_matrix s = lift_s(pr.d_in, kr);
    graded_matrix rel = hconcat(kr.u1, s);
    homology_presentation_t out;
    if (!minimize) {
        out.relations = std::move(rel);
        return out;
    }
    const poset& p = rel.base();
    std::vector<uint32_t> want = detail::coker_dims(rel);

    struct col {
        label lab;
        gf2::index_list vec;
        uint32_t insert_id;
    };
    std::vector<col> cols;
    for (uint32_t j = 0; j < rel.cols(); ++j)
        cols.push_back({rel.col_labels()[j], rel.entries().col(j), j});
    std::stable_sort(cols.begin(), cols.end(), [&](const col& a, const col& b) {
        return std::make_pair(p.position(a.lab.grade), a.insert_id) <
               std::make_pair(p.position(b.lab.grade), b.insert_id);
    });

    // Drop a column when it is spanned by the kept columns of grade <= its
    // own (those are exactly the ones alive wherever it is alive).
    std::vector<col> kept;
    for (auto& c : cols) {
        gf2::matrix sub(rel.rows(), 0);
        for (const auto& k : kept)
            if (p.leq(k.lab.grade, c.lab.grade)) sub.add_col(k.vec);
        if (!gf2::solve(sub, c.vec)) kept.push_back(std::move(c));
    }

    // Cancel unit columns against same-grade generators.
    std::vector<label> row_labels = rel.row_labels();
    std::vector<bool> row_gone(row_labels.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t j = 0; j < kept.size(); ++j) {
            if (kept[j].vec.size() != 1) continue;
            uint32_t r = kept[j].vec[0];
            if (row_labels[r].grade != kept[j].lab.grade) continue;
            row_gone[r] = true;
            kept.erase(kept.begin() + static_cast<long>(j));
            for (auto& k : kept) {
                auto it = std::lower_bound(k.vec.begin(), k.vec.end(), r);
                if (it != k.vec.end() && *it == r) k.vec.erase(it);
            }
            changed = true;
            break;
        }
    }
    // Zero columns left by cancellation carry no information.
    kept.erase(std::remove_if(kept.begin(), kept.end(),
                              [](const col& c) { return c.vec.empty(); }),
               kept.end());

    std::vector<label> new_rows;
    std::vector<uint32_t> row_map(row_labels.size(), UINT32_MAX);
    for (uint32_t i = 0; i < row_labels.size(); ++i)
        if (!row_gone[i]) {
            row_map[i] = static_cast<uint32_t>(new_rows.size());
            new_rows.push_back(row_labels[i]);
        }
    std::vector<label> new_cols;
    gf2::matrix m(static_cast<uint32_t>(new_rows.size()), static_cast<uint32_t>(kept.size()));
    for (uint32_t j = 0; j < kept.size(); ++j) {
        new_cols.push_back(kept[j].lab);
        gf2::index_list v;
        for (uint32_t i : kept[j].vec) v.push_back(row_map[i]);
        m.set_col(j, std::move(v));
    }
    out.relations = graded_matrix(&p, std::move(new_rows), std::move(new_cols), std::move(m));
    out.minimized = true;

    if (detail::coker_dims(out.relations) != want)
        throw std::logic_error("minimization changed the presented module");
    return out;
}

}  // namespace ptower
