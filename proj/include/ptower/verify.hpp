#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "homology.hpp"
#include "oracle.hpp"
#include "pirep.hpp"
#include "presentation.hpp"

namespace ptower {
namespace oracle {

struct check_line {
    std::string name;
    int degree;
    bool pass;
    std::string detail;  // "@grade" of the first counterexample
};

struct report {
    std::vector<check_line> lines;
    bool ok() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
};

namespace detail {

inline dmat to_dmat(const gf2::matrix& m) {
    dmat out(m.rows(), m.cols());
    for (uint32_t j = 0; j < m.cols(); ++j)
        for (uint32_t i : m.col(j)) out.set(i, j);
    return out;
}

inline dmat dmultiply(const dmat& a, const dmat& b) {
    dmat out(a.rows, b.ncols());
    for (uint32_t j = 0; j < b.ncols(); ++j) out.cols[j] = a.apply(b.cols[j]);
    return out;
}

inline bool dequal(const dmat& a, const dmat& b) {
    if (a.rows != b.rows || a.ncols() != b.ncols()) return false;
    for (uint32_t j = 0; j < a.ncols(); ++j)
        if (a.cols[j] != b.cols[j]) return false;
    return true;
}

// Per-generator image simplices across all grades: entry is the index in
// the degree-l chain basis, or none once the image degenerates.
inline std::vector<std::vector<std::optional<uint32_t>>> generator_images(
    const pointwise_tower& pt, const chain_presentation& cp, int degree, const chain_basis& cb) {
    const poset& p = *pt.base;
    const auto& gens = cp.deg(degree).gens;
    const auto& edges = p.hasse_edges();
    std::vector<std::vector<uint32_t>> in_edges(p.node_count());
    for (uint32_t e = 0; e < edges.size(); ++e) in_edges[edges[e].second].push_back(e);

    std::vector<std::vector<std::optional<uint32_t>>> idx(gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g) {
        idx[g].assign(p.node_count(), std::nullopt);
        std::vector<std::optional<simplex>> img(p.node_count());
        std::vector<bool> known(p.node_count(), false);
        img[gens[g].grade] = gens[g].simp;
        known[gens[g].grade] = true;
        for (grade_id x : p.linear_extension()) {
            if (!known[x] && p.lt(gens[g].grade, x)) {
                for (uint32_t e : in_edges[x]) {
                    grade_id y = edges[e].first;
                    if (!known[y]) continue;
                    if (img[y]) {
                        simplex m = pt.map_simplex(e, *img[y]);
                        if (m.dim() == degree) img[x] = std::move(m);
                    }
                    known[x] = true;
                    break;
                }
            }
            if (known[x] && img[x]) idx[g][x] = cb.index[x].at(*img[x]);
        }
    }
    return idx;
}

// The evaluation map alpha at one grade: chain basis by the generators
// alive at x (in restriction order).
inline dmat alpha_at(const std::vector<std::vector<std::optional<uint32_t>>>& images,
                     const chain_basis& cb, const std::vector<uint32_t>& gen_ids, grade_id x) {
    dmat a(cb.dim(x), static_cast<uint32_t>(gen_ids.size()));
    for (uint32_t j = 0; j < gen_ids.size(); ++j)
        if (auto i = images[gen_ids[j]][x]) a.set(*i, j);
    return a;
}

}  // namespace detail

// Presentation invariants, degree by degree, each reported as one line with
// the first counterexample grade on failure.
inline report verify_presentation(const pointwise_tower& pt, const chain_presentation& cp,
                                  int only_degree = -1) {
    const poset& p = *pt.base;
    report rep;
    int maxdeg = cp.max_degree();

    auto add = [&](const std::string& name, int degree, std::optional<grade_id> fail) {
        rep.lines.push_back({name, degree, !fail.has_value(),
                             fail ? "@" + p.name(*fail) : std::string()});
    };

    for (int d = 0; d <= maxdeg; ++d) {
        if (only_degree >= 0 && d != only_degree) continue;
        chain_basis cb = chain_basis_of(pt, d);
        chain_basis cb_low = chain_basis_of(pt, d > 0 ? d - 1 : 0);
        pointwise_module cmod = chain_module(pt, d);
        radical_report crad = radical(cmod);
        graded_matrix p1 = cp.presentation_matrix(d);
        graded_matrix f = cp.boundary_matrix(d);
        auto images = detail::generator_images(pt, cp, d, cb);
        auto images_low =
            d > 0 ? detail::generator_images(pt, cp, d - 1, cb_low)
                  : std::vector<std::vector<std::optional<uint32_t>>>();

        std::optional<grade_id> exact_fail, lift_fail, genmin_fail, relmin_fail, graph_fail,
            act_fail, p2exact_fail, p2min_fail;

        for (grade_id x = 0; x < p.node_count(); ++x) {
            auto r1 = p1.restrict_at(x);
            dmat dp1 = detail::to_dmat(r1.m);
            uint32_t rank_p1 = drank(dp1);
            uint32_t coker = r1.m.rows() - rank_p1;

            if (!exact_fail && coker != cb.dim(x)) exact_fail = x;

            if (!genmin_fail) {
                uint32_t born = 0;
                for (const auto& g : cp.deg(d).gens)
                    if (g.grade == x) ++born;
                if (born != cmod.dims[x] - crad.dims[x]) genmin_fail = x;
            }

            if (!relmin_fail) {
                for (const auto& kv : dkernel_basis(dp1)) {
                    for (uint32_t j = 0; j < r1.col_ids.size(); ++j)
                        if (dget(kv, j) && p1.col_labels()[r1.col_ids[j]].grade == x) {
                            relmin_fail = x;
                            break;
                        }
                    if (relmin_fail) break;
                }
            }

            if (!graph_fail) {
                // every column has one or two entries; with the graveyard row
                // appended the kernel is unchanged and the cokernel gains one
                bool ok = true;
                dmat bar(dp1.rows + 1, dp1.ncols());
                for (uint32_t j = 0; j < dp1.ncols(); ++j) {
                    std::size_t nnz = r1.m.col(j).size();
                    if (nnz != 1 && nnz != 2) {
                        ok = false;
                        break;
                    }
                    bar.cols[j] = dzero(dp1.rows + 1);
                    for (uint32_t i : r1.m.col(j)) dset(bar.cols[j], i);
                    if (nnz == 1) dset(bar.cols[j], dp1.rows);
                }
                if (ok) {
                    uint32_t rank_bar = drank(bar);
                    ok = (dp1.ncols() - rank_bar == dp1.ncols() - rank_p1) &&
                         ((bar.rows - rank_bar) == coker + 1);
                }
                if (!ok) graph_fail = x;
            }

            if (!lift_fail) {
                auto rf = f.restrict_at(x);
                dmat df = detail::to_dmat(rf.m);
                dmat alpha = detail::alpha_at(images, cb, rf.col_ids, x);
                dmat alpha_low =
                    d > 0 ? detail::alpha_at(images_low, cb_low, rf.row_ids, x) : dmat(0, 0);
                dmat bnd = d > 0 ? boundary_at(pt, d, x, cb_low, cb) : dmat(0, cb.dim(x));
                if (d == 0) alpha_low = dmat(0, static_cast<uint32_t>(rf.row_ids.size()));
                if (!detail::dequal(detail::dmultiply(alpha_low, df),
                                    detail::dmultiply(bnd, alpha)))
                    lift_fail = x;
            }

            if (!act_fail && !cp.active.empty()) {
                const auto& act = cp.active[x];
                bool ok = act.size() == pt.at(x).size();
                if (ok)
                    for (const auto& [s, g] : act)
                        if (!pt.at(x).count(s)) {
                            ok = false;
                            break;
                        }
                if (!ok) act_fail = x;
            }

            if (cp.opts.relrel) {
                graded_matrix p2 = cp.relrel_matrix(d);
                auto r2 = p2.restrict_at(x);
                dmat dp2 = detail::to_dmat(r2.m);
                if (!p2exact_fail) {
                    uint32_t ker_p1 = dp1.ncols() - rank_p1;
                    if (drank(dp2) != ker_p1) p2exact_fail = x;
                }
                if (cp.opts.reduce && !p2min_fail) {
                    for (const auto& kv : dkernel_basis(dp2)) {
                        for (uint32_t j = 0; j < r2.col_ids.size(); ++j)
                            if (dget(kv, j) && p2.col_labels()[r2.col_ids[j]].grade == x) {
                                p2min_fail = x;
                                break;
                            }
                        if (p2min_fail) break;
                    }
                }
            }
        }

        add("exactness_at_g", d, exact_fail);
        add("lift_property", d, lift_fail);
        add("generator_minimality", d, genmin_fail);
        add("relation_minimality", d, relmin_fail);
        add("graph_structure", d, graph_fail);
        if (!cp.active.empty()) add("active_bijection", d, act_fail);
        if (cp.opts.relrel) add("p2_exactness", d, p2exact_fail);
        if (cp.opts.relrel && cp.opts.reduce) add("p2_minimality", d, p2min_fail);
    }
    return rep;
}

// PiRep invariants: the two blocks compose to zero, the lift equations hold
// bit-exactly, and the middle homology matches the oracle pointwise.
inline void verify_pirep(report& rep, const pointwise_tower& pt, const chain_presentation& cp,
                         const pirep& pr) {
    const poset& p = *pt.base;
    int d = pr.degree;
    auto add = [&](const std::string& name, std::optional<grade_id> fail) {
        rep.lines.push_back({name, d, !fail.has_value(), fail ? "@" + p.name(*fail) : std::string()});
    };

    add("pirep_composes",
        multiply(pr.d_out, pr.d_in).entries().is_zero() ? std::nullopt
                                                        : std::optional<grade_id>(0));

    bool lift_ok = multiply(cp.presentation_matrix(d - 1), pr.rel_lift).entries() ==
                   multiply(cp.boundary_matrix(d), cp.presentation_matrix(d)).entries();
    add("relation_lift_equation", lift_ok ? std::nullopt : std::optional<grade_id>(0));
    bool hom_ok = multiply(cp.presentation_matrix(d - 1), pr.homotopy).entries() ==
                  multiply(cp.boundary_matrix(d), cp.boundary_matrix(d + 1)).entries();
    add("homotopy_equation", hom_ok ? std::nullopt : std::optional<grade_id>(0));

    std::vector<uint32_t> hdims = homology_dims(pt, d);
    std::optional<grade_id> dims_fail;
    for (grade_id x = 0; x < p.node_count(); ++x) {
        dmat dout = detail::to_dmat(pr.d_out.restrict_at(x).m);
        dmat din = detail::to_dmat(pr.d_in.restrict_at(x).m);
        uint32_t h = dout.ncols() - drank(dout) - drank(din);
        if (h != hdims[x]) {
            dims_fail = x;
            break;
        }
    }
    add("pirep_homology_dims", dims_fail);
}

// Homology-presentation invariants, including the kernel-cover exactness of
// the intermediate resolution.
inline void verify_homology(report& rep, const pointwise_tower& pt, const pirep& pr,
                            const homology_presentation_t& hp) {
    const poset& p = *pt.base;
    int d = pr.degree;
    auto add = [&](const std::string& name, std::optional<grade_id> fail) {
        rep.lines.push_back({name, d, !fail.has_value(), fail ? "@" + p.name(*fail) : std::string()});
    };

    kernel_resolution_t kr = kernel_resolution(pr.d_out);
    graded_matrix s = lift_s(pr.d_in, kr);

    add("kernel_cover_in_kernel",
        multiply(pr.d_out, kr.u0).entries().is_zero() ? std::nullopt : std::optional<grade_id>(0));
    add("lift_s_equation", multiply(kr.u0, s).entries() == pr.d_in.entries()
                               ? std::nullopt
                               : std::optional<grade_id>(0));

    std::optional<grade_id> exact0, exact1, min0;
    for (grade_id x = 0; x < p.node_count(); ++x) {
        dmat dout = detail::to_dmat(pr.d_out.restrict_at(x).m);
        auto ru0 = kr.u0.restrict_at(x);
        dmat du0 = detail::to_dmat(ru0.m);
        if (!exact0 && drank(du0) != dout.ncols() - drank(dout)) exact0 = x;
        dmat du1 = detail::to_dmat(kr.u1.restrict_at(x).m);
        if (!exact1 && drank(du1) != du0.ncols() - drank(du0)) exact1 = x;
        if (!min0) {
            echelon below;
            uint32_t born = 0;
            for (uint32_t j = 0; j < ru0.col_ids.size(); ++j) {
                grade_id g = kr.u0.col_labels()[ru0.col_ids[j]].grade;
                if (p.lt(g, x)) below.insert(du0.cols[j]);
                if (g == x) ++born;
            }
            uint32_t ker_dim = dout.ncols() - drank(dout);
            if (born != ker_dim - below.rank()) min0 = x;
        }
    }
    add("kernel_cover_exact", exact0);
    add("kernel_relations_exact", exact1);
    add("kernel_cover_minimality", min0);

    std::vector<uint32_t> hdims = homology_dims(pt, d);
    pointwise_module coker = module_of_coker(hp.relations);
    std::optional<grade_id> coker_fail;
    for (grade_id x = 0; x < p.node_count(); ++x)
        if (coker.dims[x] != hdims[x]) {
            coker_fail = x;
            break;
        }
    add("homology_coker_dims", coker_fail);
}

struct verify_options {
    int degree = -1;  // restrict to one degree when >= 0
    bool quick = false;  // presentation invariants only
};

// Runs everything on one tower: the presentation invariants and, unless
// quick, the pirep and homology-presentation checks for every degree.
inline report full_verify(const poset_tower& t, verify_options opts = {}) {
    pointwise_tower pt = materialize(t);
    presentation_options popts;
    popts.relrel = true;
    popts.reduce = true;
    popts.capture_active = true;
    chain_presentation cp = run_presentation(t, popts);
    report rep = verify_presentation(pt, cp, opts.degree);
    if (!opts.quick) {
        for (int d = 0; d <= cp.max_degree(); ++d) {
            if (opts.degree >= 0 && d != opts.degree) continue;
            pirep pr = assemble_pirep(cp, d);
            verify_pirep(rep, pt, cp, pr);
            homology_presentation_t hp = homology_presentation(pr, true);
            verify_homology(rep, pt, pr, hp);
        }
    }
    return rep;
}

}  // namespace oracle
}  // namespace ptower
