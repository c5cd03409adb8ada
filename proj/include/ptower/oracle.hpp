#pragma once

// Brute-force ground truth, kept deliberately independent of the sparse
// reduction code in gf2.hpp: everything here works pointwise with its own
// dense bitset elimination.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graded.hpp"
#include "poset.hpp"
#include "tower.hpp"

namespace ptower {
namespace oracle {

// --- dense GF(2) vectors and matrices -------------------------------------

using dvec = std::vector<uint64_t>;

inline std::size_t dwords(uint32_t bits) { return (bits + 63) / 64; }
inline dvec dzero(uint32_t bits) { return dvec(dwords(bits), 0); }
inline void dset(dvec& v, uint32_t i) { v[i >> 6] |= uint64_t(1) << (i & 63); }
inline bool dget(const dvec& v, uint32_t i) { return (v[i >> 6] >> (i & 63)) & 1; }
inline void dxor(dvec& a, const dvec& b) {
    for (std::size_t w = 0; w < a.size(); ++w) a[w] ^= b[w];
}
inline bool dis_zero(const dvec& v) {
    for (uint64_t w : v)
        if (w) return false;
    return true;
}
inline int dtop(const dvec& v) {  // highest set bit, -1 if zero
    for (std::size_t w = v.size(); w-- > 0;)
        if (v[w]) return static_cast<int>(w * 64 + 63 - __builtin_clzll(v[w]));
    return -1;
}

struct dmat {
    uint32_t rows = 0;
    std::vector<dvec> cols;

    dmat() = default;
    dmat(uint32_t r, uint32_t c) : rows(r), cols(c, dzero(r)) {}

    uint32_t ncols() const { return static_cast<uint32_t>(cols.size()); }
    void set(uint32_t i, uint32_t j) { dset(cols[j], i); }
    bool get(uint32_t i, uint32_t j) const { return dget(cols[j], i); }
    void push_col(dvec c) { cols.push_back(std::move(c)); }

    dvec apply(const dvec& x) const {  // x over columns
        dvec out = dzero(rows);
        for (uint32_t j = 0; j < ncols(); ++j)
            if (dget(x, j)) dxor(out, cols[j]);
        return out;
    }
};

// Echelon basis keyed by top bit; supports rank, membership and reduction.
struct echelon {
    std::map<int, dvec> pivots;

    // Reduces v against the basis; returns the residual.
    dvec reduce(dvec v) const {
        int t;
        while ((t = dtop(v)) >= 0) {
            auto it = pivots.find(t);
            if (it == pivots.end()) break;
            dxor(v, it->second);
        }
        return v;
    }

    // Inserts v if independent; returns true when the rank grew.
    bool insert(dvec v) {
        v = reduce(std::move(v));
        int t = dtop(v);
        if (t < 0) return false;
        pivots.emplace(t, std::move(v));
        return true;
    }

    uint32_t rank() const { return static_cast<uint32_t>(pivots.size()); }
};

inline uint32_t drank(const dmat& m) {
    echelon e;
    for (const auto& c : m.cols) e.insert(c);
    return e.rank();
}

inline uint32_t dkernel_dim(const dmat& m) { return m.ncols() - drank(m); }

// Kernel basis via augmented elimination (tracks column combinations).
inline std::vector<dvec> dkernel_basis(const dmat& m) {
    std::vector<dvec> out;
    std::vector<std::pair<dvec, dvec>> cols;  // (reduced value, combination)
    std::map<int, std::size_t> pivot_idx;
    for (uint32_t j = 0; j < m.ncols(); ++j) {
        dvec v = m.cols[j];
        dvec comb = dzero(m.ncols());
        dset(comb, j);
        int t;
        while ((t = dtop(v)) >= 0) {
            auto it = pivot_idx.find(t);
            if (it == pivot_idx.end()) break;
            dxor(v, cols[it->second].first);
            dxor(comb, cols[it->second].second);
        }
        if (dtop(v) < 0) {
            out.push_back(comb);
        } else {
            pivot_idx[dtop(v)] = cols.size();
            cols.push_back({std::move(v), std::move(comb)});
        }
    }
    return out;
}

// Any solution of m x = b, as a combination over columns.
inline std::optional<dvec> dsolve(const dmat& m, const dvec& b) {
    std::vector<std::pair<dvec, dvec>> cols;
    std::map<int, std::size_t> pivot_idx;
    for (uint32_t j = 0; j < m.ncols(); ++j) {
        dvec v = m.cols[j];
        dvec comb = dzero(m.ncols());
        dset(comb, j);
        int t;
        while ((t = dtop(v)) >= 0) {
            auto it = pivot_idx.find(t);
            if (it == pivot_idx.end()) break;
            dxor(v, cols[it->second].first);
            dxor(comb, cols[it->second].second);
        }
        if (dtop(v) >= 0) {
            pivot_idx[dtop(v)] = cols.size();
            cols.push_back({std::move(v), std::move(comb)});
        }
    }
    dvec r = b;
    dvec x = dzero(m.ncols());
    int t;
    while ((t = dtop(r)) >= 0) {
        auto it = pivot_idx.find(t);
        if (it == pivot_idx.end()) return std::nullopt;
        dxor(r, cols[it->second].first);
        dxor(x, cols[it->second].second);
    }
    return x;
}

// --- pointwise persistence modules -----------------------------------------

// A functor into vector spaces, given by one dimension per grade and one
// matrix per Hasse edge.
struct pointwise_module {
    const poset* base = nullptr;
    std::vector<uint32_t> dims;    // per grade
    std::vector<dmat> edge_maps;   // per hasse edge: dims[to] x dims[from]
};

// Basis bookkeeping for the chain modules.
struct chain_basis {
    std::vector<std::vector<simplex>> simplices;       // per grade, sorted
    std::vector<std::map<simplex, uint32_t>> index;    // per grade

    uint32_t dim(grade_id x) const { return static_cast<uint32_t>(simplices[x].size()); }
};

inline chain_basis chain_basis_of(const pointwise_tower& pt, int degree) {
    const poset& p = *pt.base;
    chain_basis cb;
    cb.simplices.resize(p.node_count());
    cb.index.resize(p.node_count());
    for (grade_id x = 0; x < p.node_count(); ++x) {
        for (const auto& s : pt.at(x))
            if (s.dim() == degree) cb.simplices[x].push_back(s);
        std::sort(cb.simplices[x].begin(), cb.simplices[x].end());
        for (uint32_t i = 0; i < cb.simplices[x].size(); ++i) cb.index[x][cb.simplices[x][i]] = i;
    }
    return cb;
}

// The degree-l chain module: basis the l-simplices, structure maps send a
// simplex to its image when the image still has degree l, else to zero.
inline pointwise_module chain_module(const pointwise_tower& pt, int degree) {
    const poset& p = *pt.base;
    chain_basis cb = chain_basis_of(pt, degree);
    pointwise_module m;
    m.base = pt.base;
    m.dims.resize(p.node_count());
    for (grade_id x = 0; x < p.node_count(); ++x) m.dims[x] = cb.dim(x);
    const auto& edges = p.hasse_edges();
    m.edge_maps.resize(edges.size());
    for (uint32_t e = 0; e < edges.size(); ++e) {
        auto [y, x] = edges[e];
        dmat map(cb.dim(x), cb.dim(y));
        for (uint32_t j = 0; j < cb.dim(y); ++j) {
            simplex img = pt.map_simplex(e, cb.simplices[y][j]);
            if (img.dim() == degree) map.set(cb.index[x].at(img), j);
        }
        m.edge_maps[e] = std::move(map);
    }
    return m;
}

// The simplicial boundary matrix at one grade.
inline dmat boundary_at(const pointwise_tower& pt, int degree, grade_id x,
                        const chain_basis& cb_low, const chain_basis& cb_high) {
    dmat b(cb_low.dim(x), cb_high.dim(x));
    if (degree == 0) return b;
    for (uint32_t j = 0; j < cb_high.dim(x); ++j)
        for (const auto& f : cb_high.simplices[x][j].faces()) b.set(cb_low.index[x].at(f), j);
    return b;
}

// Per-grade homology dimensions: dim ker boundary_l - rank boundary_{l+1}.
inline std::vector<uint32_t> homology_dims(const pointwise_tower& pt, int degree) {
    const poset& p = *pt.base;
    chain_basis low = chain_basis_of(pt, degree - 1 < 0 ? 0 : degree - 1);
    chain_basis mid = chain_basis_of(pt, degree);
    chain_basis high = chain_basis_of(pt, degree + 1);
    std::vector<uint32_t> out(p.node_count());
    for (grade_id x = 0; x < p.node_count(); ++x) {
        dmat bl = degree == 0 ? dmat(0, mid.dim(x)) : boundary_at(pt, degree, x, low, mid);
        dmat bh = boundary_at(pt, degree + 1, x, mid, high);
        uint32_t ker = mid.dim(x) - drank(bl);
        out[x] = ker - drank(bh);
    }
    return out;
}

// --- radical, cokernel and minimal Betti numbers ---------------------------

struct radical_report {
    std::vector<uint32_t> dims;  // per grade
};

// Rad(M)(x) is the span of the images from the immediate predecessors.
inline radical_report radical(const pointwise_module& m) {
    const poset& p = *m.base;
    radical_report rep;
    rep.dims.resize(p.node_count());
    const auto& edges = p.hasse_edges();
    std::vector<std::vector<uint32_t>> in_edges(p.node_count());
    for (uint32_t e = 0; e < edges.size(); ++e) in_edges[edges[e].second].push_back(e);
    for (grade_id x = 0; x < p.node_count(); ++x) {
        echelon ech;
        for (uint32_t e : in_edges[x])
            for (const auto& c : m.edge_maps[e].cols) ech.insert(c);
        rep.dims[x] = ech.rank();
    }
    return rep;
}

// The cokernel of a graded matrix, evaluated pointwise with induced maps.
// The basis at x consists of the classes of the non-pivot rows.
inline pointwise_module module_of_coker(const graded_matrix& gm) {
    const poset& p = gm.base();
    pointwise_module out;
    out.base = &p;
    out.dims.resize(p.node_count());

    struct grade_info {
        std::vector<uint32_t> row_ids;            // ambient rows present at x
        std::map<uint32_t, uint32_t> row_pos;     // ambient row -> local index
        echelon image;                            // of the columns, in local coords
        std::vector<uint32_t> coker_rows;         // local indices of non-pivot rows
        std::map<uint32_t, uint32_t> coker_pos;   // local row -> coker coordinate
    };
    std::vector<grade_info> info(p.node_count());

    for (grade_id x = 0; x < p.node_count(); ++x) {
        auto& gi = info[x];
        auto r = gm.restrict_at(x);
        gi.row_ids = r.row_ids;
        for (uint32_t i = 0; i < r.row_ids.size(); ++i) gi.row_pos[r.row_ids[i]] = i;
        for (uint32_t j = 0; j < r.m.cols(); ++j) {
            dvec c = dzero(r.m.rows());
            for (uint32_t i : r.m.col(j)) dset(c, i);
            gi.image.insert(std::move(c));
        }
        std::vector<bool> is_pivot(r.m.rows(), false);
        for (const auto& [t, v] : gi.image.pivots) {
            (void)v;
            is_pivot[static_cast<uint32_t>(t)] = true;
        }
        for (uint32_t i = 0; i < r.m.rows(); ++i)
            if (!is_pivot[i]) {
                gi.coker_pos[i] = static_cast<uint32_t>(gi.coker_rows.size());
                gi.coker_rows.push_back(i);
            }
        out.dims[x] = static_cast<uint32_t>(gi.coker_rows.size());
    }

    // Projection of a local row-space vector at grade x onto the coker basis:
    // eliminate pivot rows from the top down, then read off the coordinates.
    auto project = [](const grade_info& gi, dvec v) {
        int t;
        dvec out_coords = dzero(static_cast<uint32_t>(gi.coker_rows.size()));
        while ((t = dtop(v)) >= 0) {
            auto it = gi.image.pivots.find(t);
            if (it != gi.image.pivots.end()) {
                dxor(v, it->second);
            } else {
                dset(out_coords, gi.coker_pos.at(static_cast<uint32_t>(t)));
                v[t >> 6] ^= uint64_t(1) << (t & 63);
            }
        }
        return out_coords;
    };

    const auto& edges = p.hasse_edges();
    out.edge_maps.resize(edges.size());
    for (uint32_t e = 0; e < edges.size(); ++e) {
        auto [y, x] = edges[e];
        const auto& gy = info[y];
        const auto& gx = info[x];
        dmat map(out.dims[x], out.dims[y]);
        for (uint32_t j = 0; j < out.dims[y]; ++j) {
            uint32_t ambient_row = gy.row_ids[gy.coker_rows[j]];
            dvec v = dzero(static_cast<uint32_t>(gx.row_ids.size()));
            dset(v, gx.row_pos.at(ambient_row));
            map.cols[j] = project(gx, std::move(v));
        }
        out.edge_maps[e] = std::move(map);
    }
    return out;
}

// One step of the minimal-resolution ladder: the per-grade number of
// projective-cover generators, plus the kernel of the cover as a module.
struct cover_step {
    std::vector<uint32_t> betti;  // per grade
    pointwise_module kernel;
};

inline cover_step betti_step(const pointwise_module& m) {
    const poset& p = *m.base;
    const auto& edges = p.hasse_edges();
    std::vector<std::vector<uint32_t>> in_edges(p.node_count());
    for (uint32_t e = 0; e < edges.size(); ++e) in_edges[edges[e].second].push_back(e);

    // Pick cover generators: unit vectors extending the radical at each grade.
    struct gen {
        grade_id grade;
        dvec vec;  // in M(grade) coordinates
    };
    std::vector<gen> gens;
    cover_step out;
    out.betti.assign(p.node_count(), 0);
    for (grade_id x : p.linear_extension()) {
        echelon ech;
        for (uint32_t e : in_edges[x])
            for (const auto& c : m.edge_maps[e].cols) ech.insert(c);
        for (uint32_t i = 0; i < m.dims[x]; ++i) {
            dvec unit = dzero(m.dims[x]);
            dset(unit, i);
            if (ech.insert(unit)) {
                dvec v = dzero(m.dims[x]);
                dset(v, i);
                gens.push_back({x, std::move(v)});
                out.betti[x]++;
            }
        }
    }

    // Push every generator forward through the module along the sweep.
    std::vector<std::vector<std::optional<dvec>>> pushed(gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g) {
        pushed[g].assign(p.node_count(), std::nullopt);
        pushed[g][gens[g].grade] = gens[g].vec;
        for (grade_id x : p.linear_extension()) {
            if (pushed[g][x] || !p.lt(gens[g].grade, x)) continue;
            for (uint32_t e : in_edges[x]) {
                grade_id y = edges[e].first;
                if (pushed[g][y]) {
                    pushed[g][x] = m.edge_maps[e].apply(*pushed[g][y]);
                    break;
                }
            }
        }
    }

    // The kernel of the cover map, grade by grade, with induced maps.
    struct kinfo {
        std::vector<uint32_t> gen_ids;   // generators alive at x
        std::vector<dvec> kernel_basis;  // over those generators
        dmat cover;                      // M(x) coords by alive generators
    };
    std::vector<kinfo> kin(p.node_count());
    pointwise_module ker;
    ker.base = m.base;
    ker.dims.resize(p.node_count());
    for (grade_id x = 0; x < p.node_count(); ++x) {
        auto& ki = kin[x];
        for (uint32_t g = 0; g < gens.size(); ++g)
            if (p.leq(gens[g].grade, x)) ki.gen_ids.push_back(g);
        ki.cover = dmat(m.dims[x], static_cast<uint32_t>(ki.gen_ids.size()));
        for (uint32_t j = 0; j < ki.gen_ids.size(); ++j) ki.cover.cols[j] = *pushed[ki.gen_ids[j]][x];
        ki.kernel_basis = dkernel_basis(ki.cover);
        ker.dims[x] = static_cast<uint32_t>(ki.kernel_basis.size());
    }
    ker.edge_maps.resize(edges.size());
    for (uint32_t e = 0; e < edges.size(); ++e) {
        auto [y, x] = edges[e];
        const auto& ky = kin[y];
        const auto& kx = kin[x];
        // kernel vectors at y, re-expressed over the generators alive at x
        dmat basis_x(static_cast<uint32_t>(kx.gen_ids.size()), ker.dims[x]);
        for (uint32_t j = 0; j < ker.dims[x]; ++j) basis_x.cols[j] = kx.kernel_basis[j];
        dmat map(ker.dims[x], ker.dims[y]);
        std::map<uint32_t, uint32_t> pos_x;
        for (uint32_t j = 0; j < kx.gen_ids.size(); ++j) pos_x[kx.gen_ids[j]] = j;
        for (uint32_t j = 0; j < ker.dims[y]; ++j) {
            dvec lifted = dzero(static_cast<uint32_t>(kx.gen_ids.size()));
            for (uint32_t i = 0; i < ky.gen_ids.size(); ++i)
                if (dget(ky.kernel_basis[j], i)) dset(lifted, pos_x.at(ky.gen_ids[i]));
            auto sol = dsolve(basis_x, lifted);
            if (!sol) throw std::logic_error("kernel vector did not stay in the kernel");
            map.cols[j] = *sol;
        }
        ker.edge_maps[e] = std::move(map);
    }
    out.kernel = std::move(ker);
    return out;
}

// Minimal Betti numbers of a module up to homological degree two.
inline std::vector<std::vector<uint32_t>> minimal_betti(const pointwise_module& m) {
    std::vector<std::vector<uint32_t>> out;
    cover_step s0 = betti_step(m);
    out.push_back(s0.betti);
    cover_step s1 = betti_step(s0.kernel);
    out.push_back(s1.betti);
    cover_step s2 = betti_step(s1.kernel);
    out.push_back(s2.betti);
    return out;
}

}  // namespace oracle
}  // namespace ptower
