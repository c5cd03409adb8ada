#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "gf2.hpp"
#include "graded.hpp"
#include "union_find.hpp"

namespace ptower {
namespace graph_solver {

// Leaf order of a tree: vertex i is a leaf of the tree minus all earlier
// vertices. The distinguished vertex, if any, comes last (its degree is
// bumped so it never enters the queue early).
inline std::vector<uint32_t> leaf_order(uint32_t n_vertices,
                                        const std::vector<std::pair<uint32_t, uint32_t>>& edges,
                                        std::optional<uint32_t> distinguished = std::nullopt) {
    if (edges.size() + 1 != n_vertices) throw not_a_tree("edge count does not match a tree");
    std::vector<std::vector<uint32_t>> adj(n_vertices);
    std::vector<uint32_t> deg(n_vertices, 0);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
        deg[u]++;
        deg[v]++;
    }
    if (distinguished) deg[*distinguished]++;
    std::queue<uint32_t> q;
    for (uint32_t v = 0; v < n_vertices; ++v)
        if (deg[v] <= 1 && !(distinguished && *distinguished == v && n_vertices > 1)) q.push(v);
    if (n_vertices == 1) {
        return {0};
    }
    std::vector<uint32_t> order;
    std::vector<bool> removed(n_vertices, false);
    while (!q.empty()) {
        uint32_t v = q.front();
        q.pop();
        if (removed[v]) continue;
        removed[v] = true;
        order.push_back(v);
        for (uint32_t u : adj[v])
            if (!removed[u] && --deg[u] == 1) q.push(u);
    }
    if (distinguished && !removed[*distinguished]) {
        order.push_back(*distinguished);
        removed[*distinguished] = true;
    }
    if (order.size() != n_vertices) throw not_a_tree("input graph is not a tree");
    return order;
}

namespace detail {

struct tree_system {
    std::vector<uint32_t> vertices;                        // row indices of this component
    std::vector<std::pair<uint32_t, std::pair<uint32_t, uint32_t>>> tree_cols;  // (col, (u,v))
    std::optional<std::pair<uint32_t, uint32_t>> single_col;                    // (col, vertex)
};

}  // namespace detail

// Solves T'x = b for the incidence matrix of one tree plus at most one
// single-entry column, by leaf-order back-substitution. The vertex arguments
// are row indices of the ambient matrix; b is given as a membership bitmap.
// Throws inconsistent_system if b is not in the image.
inline void solve_tree(const detail::tree_system& sys, const std::vector<uint8_t>& b,
                       std::vector<uint8_t>& x_out, std::size_t* ops = nullptr) {
    std::size_t n = sys.vertices.size();
    // local indexing of this component's vertices
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    {
        std::vector<std::pair<uint32_t, uint32_t>> idx;
        idx.reserve(n);
        for (uint32_t i = 0; i < n; ++i) idx.push_back({sys.vertices[i], i});
        std::sort(idx.begin(), idx.end());
        auto to_local = [&](uint32_t row) {
            auto it = std::lower_bound(idx.begin(), idx.end(), std::make_pair(row, 0u));
            return it->second;
        };
        for (const auto& [col, uv] : sys.tree_cols)
            edges.push_back({to_local(uv.first), to_local(uv.second)});
        std::optional<uint32_t> dist;
        if (sys.single_col) dist = to_local(sys.single_col->second);
        std::vector<uint32_t> order = leaf_order(static_cast<uint32_t>(n), edges, dist);

        // adjacency with edge ids
        std::vector<std::vector<std::pair<uint32_t, uint32_t>>> adj(n);  // (other, edge idx)
        for (uint32_t ei = 0; ei < edges.size(); ++ei) {
            adj[edges[ei].first].push_back({edges[ei].second, ei});
            adj[edges[ei].second].push_back({edges[ei].first, ei});
        }
        std::vector<uint8_t> edge_assigned(edges.size(), 0);
        std::vector<uint8_t> edge_value(edges.size(), 0);
        std::vector<uint8_t> acc(n, 0);  // XOR of assigned incident edge values
        std::vector<uint8_t> done(n, 0);
        for (std::size_t oi = 0; oi < order.size(); ++oi) {
            uint32_t v = order[oi];
            done[v] = 1;
            uint8_t rhs = static_cast<uint8_t>(b[sys.vertices[v]] ^ acc[v]);
            if (ops) ++*ops;
            if (oi + 1 < order.size() || !sys.single_col) {
                // find the unique unassigned incident tree edge, if any
                int pending = -1;
                for (auto [u, ei] : adj[v]) {
                    if (ops) ++*ops;
                    if (!edge_assigned[ei]) {
                        pending = static_cast<int>(ei);
                        break;
                    }
                }
                if (pending < 0) {
                    if (rhs) throw inconsistent_system("right-hand side is not in the image");
                    continue;
                }
                uint32_t ei = static_cast<uint32_t>(pending);
                edge_assigned[ei] = 1;
                edge_value[ei] = rhs;
                uint32_t other = edges[ei].first == v ? edges[ei].second : edges[ei].first;
                acc[v] ^= rhs;
                acc[other] ^= rhs;
            } else {
                // last vertex carries the single-entry column
                x_out[sys.single_col->first] = rhs;
            }
        }
        for (uint32_t ei = 0; ei < edges.size(); ++ei)
            x_out[sys.tree_cols[ei].first] = edge_value[ei];
    }
}

// Solves T'x = b where T' is the incidence matrix of a tree spanning all
// rows, plus at most one single-entry column. Returns one value per column.
inline std::vector<uint8_t> solve_tree(const gf2::matrix& t, const gf2::index_list& b) {
    detail::tree_system sys;
    for (uint32_t r = 0; r < t.rows(); ++r) sys.vertices.push_back(r);
    for (uint32_t j = 0; j < t.cols(); ++j) {
        const auto& col = t.col(j);
        if (col.size() == 2) {
            sys.tree_cols.push_back({j, {col[0], col[1]}});
        } else if (col.size() == 1) {
            if (sys.single_col) throw not_a_tree("more than one single-entry column");
            sys.single_col = {j, col[0]};
        } else {
            throw not_a_tree("column is not a tree edge or a single-entry column");
        }
    }
    std::vector<uint8_t> bvec(t.rows(), 0);
    for (uint32_t i : b) bvec[i] = 1;
    std::vector<uint8_t> x(t.cols(), 0);
    solve_tree(sys, bvec, x);
    return x;
}

struct solve_result {
    std::vector<uint8_t> x;  // one entry per column
    std::size_t ops = 0;     // elementary steps, for scaling checks
};

// Solves Ax = b where every column of A has at most two nonzero entries.
// Zero columns are pinned to zero; non-forest multigraph columns and all but
// one single-entry column per component are discarded (set to zero); each
// remaining tree system is solved by back-substitution. Linear time in
// rows + columns. Throws inconsistent_system when b is not in the image.
inline solve_result solve_multigraph(const gf2::matrix& a, const gf2::index_list& b) {
    solve_result res;
    res.x.assign(a.cols(), 0);
    std::vector<uint8_t> bvec(a.rows(), 0);
    for (uint32_t i : b) {
        if (i >= a.rows()) throw dimension_mismatch("rhs row out of range");
        bvec[i] = 1;
    }

    union_find uf(a.rows());
    // spanning forest of the two-entry columns, scanned in column order
    std::vector<std::pair<uint32_t, std::pair<uint32_t, uint32_t>>> forest_cols;
    std::vector<std::pair<uint32_t, uint32_t>> single_cols;  // (col, vertex)
    for (uint32_t j = 0; j < a.cols(); ++j) {
        const auto& col = a.col(j);
        res.ops++;
        if (col.empty()) continue;  // pinned to zero
        if (col.size() == 1) {
            single_cols.push_back({j, col[0]});
        } else if (col.size() == 2) {
            if (uf.unite(col[0], col[1])) forest_cols.push_back({j, {col[0], col[1]}});
        } else {
            throw dimension_mismatch("column has more than two nonzero entries");
        }
    }

    // group rows and columns into components of the forest
    std::vector<uint32_t> comp_of(a.rows());
    std::vector<uint32_t> roots;
    std::vector<int32_t> comp_idx(a.rows(), -1);
    for (uint32_t r = 0; r < a.rows(); ++r) {
        uint32_t root = uf.find(r);
        if (comp_idx[root] < 0) {
            comp_idx[root] = static_cast<int32_t>(roots.size());
            roots.push_back(root);
        }
        comp_of[r] = static_cast<uint32_t>(comp_idx[root]);
        res.ops++;
    }
    std::vector<detail::tree_system> systems(roots.size());
    for (uint32_t r = 0; r < a.rows(); ++r) systems[comp_of[r]].vertices.push_back(r);
    for (const auto& fc : forest_cols) systems[comp_of[fc.second.first]].tree_cols.push_back(fc);
    for (const auto& sc : single_cols) {
        auto& sys = systems[comp_of[sc.second]];
        // keep only the lowest-index single-entry column per component
        if (!sys.single_col) sys.single_col = sc;
    }

    for (const auto& sys : systems) {
        res.ops += sys.vertices.size() + sys.tree_cols.size();
        solve_tree(sys, bvec, res.x, &res.ops);
    }
    return res;
}

inline gf2::index_list solution_support(const solve_result& r) {
    gf2::index_list out;
    for (uint32_t j = 0; j < r.x.size(); ++j)
        if (r.x[j]) out.push_back(j);
    return out;
}

// Solves A X = B for graded matrices where A has at most two nonzero entries
// per column, forcing X[k][j] = 0 whenever grade(col_k(A)) is not below
// grade(col_j(B)). One multigraph solve per column of B.
inline graded_matrix constrained_lift(const graded_matrix& a, const graded_matrix& b) {
    if (a.row_labels() != b.row_labels())
        throw dimension_mismatch("constrained lift: row labels of A and B differ");
    const poset& p = a.base();
    gf2::matrix x(a.cols(), b.cols());
    for (uint32_t j = 0; j < b.cols(); ++j) {
        grade_id target = b.col_labels()[j].grade;
        std::vector<uint32_t> allowed;
        for (uint32_t k = 0; k < a.cols(); ++k)
            if (p.leq(a.col_labels()[k].grade, target)) allowed.push_back(k);
        gf2::matrix sub(a.rows(), static_cast<uint32_t>(allowed.size()));
        for (uint32_t k = 0; k < allowed.size(); ++k) sub.set_col(k, a.entries().col(allowed[k]));
        solve_result sol = solve_multigraph(sub, b.entries().col(j));
        gf2::index_list col;
        for (uint32_t k = 0; k < allowed.size(); ++k)
            if (sol.x[k]) col.push_back(allowed[k]);
        x.set_col(j, std::move(col));
    }
    return graded_matrix(&p, a.col_labels(), b.col_labels(), std::move(x));
}

}  // namespace graph_solver
}  // namespace ptower
