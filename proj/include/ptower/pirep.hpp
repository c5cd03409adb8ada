#pragma once

#include <string>
#include <vector>

#include "graded.hpp"
#include "graph_solver.hpp"
#include "presentation.hpp"

namespace ptower {

// A projective implicit representation of the degree-l homology: two graded
// matrices d_out, d_in with d_out * d_in = 0 whose middle homology is H_l.
struct pirep {
    int degree = 0;
    graded_matrix d_out;     // (boundary_l | presentation_{l-1})
    graded_matrix d_in;      // the block matrix below it
    graded_matrix rel_lift;  // correction making the relation square commute
    graded_matrix homotopy;  // correction for boundary . boundary != 0
};

// Lift of boundary_l . presentation_l along presentation_{l-1}: the induced
// map on relations one degree down.
inline graded_matrix compute_relation_lift(const chain_presentation& cp, int degree) {
    graded_matrix a = cp.presentation_matrix(degree - 1);
    graded_matrix b = multiply(cp.boundary_matrix(degree), cp.presentation_matrix(degree));
    return graph_solver::constrained_lift(a, b);
}

// Lift of boundary_l . boundary_{l+1} along presentation_{l-1}: the chain
// homotopy witnessing that the boundary lifts compose to zero.
inline graded_matrix compute_homotopy(const chain_presentation& cp, int degree) {
    graded_matrix a = cp.presentation_matrix(degree - 1);
    graded_matrix b = multiply(cp.boundary_matrix(degree), cp.boundary_matrix(degree + 1));
    return graph_solver::constrained_lift(a, b);
}

inline pirep assemble_pirep(const chain_presentation& cp, int degree) {
    if (!cp.opts.relrel)
        throw missing_relrel("pirep assembly needs the relations-of-relations pass");
    const poset* p = cp.base;

    pirep pr;
    pr.degree = degree;
    pr.d_out = hconcat(cp.boundary_matrix(degree), cp.presentation_matrix(degree - 1));
    pr.rel_lift = compute_relation_lift(cp, degree);
    pr.homotopy = compute_homotopy(cp, degree);

    graded_matrix f_up = cp.boundary_matrix(degree + 1);
    graded_matrix p1 = cp.presentation_matrix(degree);
    graded_matrix p2_low = cp.relrel_matrix(degree - 1);

    std::vector<label> rows = cp.gen_labels(degree);
    uint32_t top = static_cast<uint32_t>(rows.size());
    for (const auto& l : cp.rel_labels(degree - 1)) rows.push_back(l);

    std::vector<label> cols = cp.gen_labels(degree + 1);
    for (const auto& l : cp.rel_labels(degree)) cols.push_back(l);
    for (const auto& l : cp.relrel_labels(degree - 1)) cols.push_back(l);

    gf2::matrix m(static_cast<uint32_t>(rows.size()), static_cast<uint32_t>(cols.size()));
    uint32_t j = 0;
    for (uint32_t k = 0; k < f_up.cols(); ++k, ++j) {
        gf2::index_list col = f_up.entries().col(k);
        for (uint32_t i : pr.homotopy.entries().col(k)) col.push_back(top + i);
        m.set_col(j, std::move(col));
    }
    for (uint32_t k = 0; k < p1.cols(); ++k, ++j) {
        gf2::index_list col = p1.entries().col(k);
        for (uint32_t i : pr.rel_lift.entries().col(k)) col.push_back(top + i);
        m.set_col(j, std::move(col));
    }
    for (uint32_t k = 0; k < p2_low.cols(); ++k, ++j) {
        gf2::index_list col;
        for (uint32_t i : p2_low.entries().col(k)) col.push_back(top + i);
        m.set_col(j, std::move(col));
    }
    pr.d_in = graded_matrix(p, std::move(rows), std::move(cols), std::move(m));

    if (!multiply(pr.d_out, pr.d_in).entries().is_zero())
        throw std::logic_error("pirep blocks do not compose to zero");
    return pr;
}

}  // namespace ptower
