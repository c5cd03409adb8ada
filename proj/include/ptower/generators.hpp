#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "io.hpp"
#include "tower.hpp"

namespace ptower {
namespace gen {

// Thin wrapper over mt19937_64 with portable bounded draws (the standard
// distributions are implementation-defined, which would break seeded golden
// files).
struct rng {
    std::mt19937_64 eng;
    explicit rng(uint64_t seed) : eng(seed) {}
    uint64_t next() { return eng(); }
    uint32_t below(uint32_t n) { return n == 0 ? 0 : static_cast<uint32_t>(next() % n); }
    bool chance(double p) { return next() % 1000000 < static_cast<uint64_t>(p * 1000000.0); }
};

inline std::vector<std::string> vertex_pool(uint32_t n) {
    std::vector<std::string> out;
    for (uint32_t i = 0; i < n; ++i) out.push_back("v" + std::to_string(i));
    return out;
}

// All simplices of dimension <= 2 on a pool of the given size.
inline std::size_t pool_capacity(uint32_t v) {
    std::size_t n = v;
    if (v >= 2) n += static_cast<std::size_t>(v) * (v - 1) / 2;
    if (v >= 3) n += static_cast<std::size_t>(v) * (v - 1) * (v - 2) / 6;
    return n;
}

namespace detail {

// Draws `target` distinct simplices of dimension <= 2, closed under faces.
inline std::vector<simplex> random_complex(rng& r, uint32_t target) {
    uint32_t v = 3;
    while (pool_capacity(v) < target) ++v;
    auto pool = vertex_pool(v);
    std::set<simplex> chosen;
    auto add_with_faces = [&](const simplex& s) {
        for (const auto& f : s.faces())
            if (!chosen.count(f)) chosen.insert(f);
        chosen.insert(s);
    };
    // make sure the faces of the small pool exist before drawing triangles
    uint32_t guard = 0;
    while (chosen.size() < target && guard++ < 100000) {
        uint32_t dim = r.below(3);
        std::vector<std::string> verts;
        std::set<uint32_t> picked;
        while (picked.size() < dim + 1) picked.insert(r.below(v));
        for (uint32_t i : picked) verts.push_back(pool[i]);
        simplex s(verts);
        for (const auto& f : s.faces())
            add_with_faces(f);
        add_with_faces(s);
    }
    return std::vector<simplex>(chosen.begin(), chosen.end());
}

// Grades a one-critical complex over the poset: each simplex gets one birth
// grade that dominates the birth grades of its faces. The poset must have
// joins along the chosen faces (true for grids and chains).
inline tower_bundle one_critical(std::shared_ptr<poset> p, const std::vector<simplex>& simplices,
                                 rng& r) {
    std::map<simplex, grade_id> grade_of;
    std::vector<simplex> by_dim = simplices;
    std::sort(by_dim.begin(), by_dim.end());  // dimension-major order
    std::vector<std::pair<std::string, std::vector<std::string>>> gens;
    for (const auto& s : by_dim) {
        grade_id g;
        if (s.dim() == 0) {
            g = static_cast<grade_id>(r.below(static_cast<uint32_t>(p->node_count())));
        } else {
            // least upper up-set: intersect the up-sets of the faces
            std::vector<grade_id> candidates;
            for (grade_id x = 0; x < p->node_count(); ++x) {
                bool ok = true;
                for (const auto& f : s.faces())
                    if (!p->leq(grade_of.at(f), x)) {
                        ok = false;
                        break;
                    }
                if (ok) candidates.push_back(x);
            }
            if (candidates.empty())
                throw std::logic_error("no common upper bound for the faces of " + s.str());
            g = candidates[r.below(static_cast<uint32_t>(candidates.size()))];
        }
        grade_of[s] = g;
        gens.push_back({p->name(g), s.vertices()});
    }
    tower_bundle tb;
    tb.base = std::move(p);
    tb.tower = make_tower(tb.base.get(), std::move(gens), {});
    return tb;
}

}  // namespace detail

// One-critical multi-filtration over an nx-by-ny grid. `fill` >= 1 is the
// simplex-count target; below 1 it is a fraction of a small full complex.
inline tower_bundle grid_tower(uint32_t nx, uint32_t ny, double fill, uint64_t seed) {
    rng r(seed);
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    auto name = [&](uint32_t i, uint32_t j) { return "x" + std::to_string(i) + "y" + std::to_string(j); };
    for (uint32_t i = 0; i < nx; ++i)
        for (uint32_t j = 0; j < ny; ++j) nodes.push_back(name(i, j));
    for (uint32_t i = 0; i < nx; ++i)
        for (uint32_t j = 0; j < ny; ++j) {
            if (i + 1 < nx) edges.push_back({name(i, j), name(i + 1, j)});
            if (j + 1 < ny) edges.push_back({name(i, j), name(i, j + 1)});
        }
    auto p = std::make_shared<poset>(nodes, edges);
    uint32_t target = fill >= 1.0 ? static_cast<uint32_t>(fill)
                                  : std::max<uint32_t>(3, static_cast<uint32_t>(fill * pool_capacity(8)));
    auto simplices = detail::random_complex(r, target);
    return detail::one_critical(std::move(p), simplices, r);
}

// Plain filtration over a chain poset; chain modules are free here.
inline tower_bundle chain_tower(uint32_t len, uint32_t simplices, uint64_t seed) {
    rng r(seed);
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    for (uint32_t i = 0; i < len; ++i) nodes.push_back("x" + std::to_string(i));
    for (uint32_t i = 0; i + 1 < len; ++i) edges.push_back({nodes[i], nodes[i + 1]});
    auto p = std::make_shared<poset>(nodes, edges);
    auto cx = detail::random_complex(r, simplices);
    return detail::one_critical(std::move(p), cx, r);
}

// Random tower over an arbitrary poset: a global merge schedule keyed by
// poset depth keeps the edge maps functorial by construction; the compact
// encoding is recovered with extract(), so every emitted tower is valid.
inline tower_bundle random_tower_over(std::shared_ptr<poset> p, uint32_t target_gens,
                                      uint32_t target_events, uint64_t seed) {
    rng r(seed);
    const poset& ps = *p;
    std::size_t t0 = ps.node_count();

    std::vector<uint32_t> depth(t0, 0);
    uint32_t max_depth = 0;
    for (grade_id x : ps.linear_extension()) {
        for (grade_id y : ps.predecessors(x)) depth[x] = std::max(depth[x], depth[y] + 1);
        max_depth = std::max(max_depth, depth[x]);
    }

    uint32_t nverts = std::max<uint32_t>(6, std::min<uint32_t>(12, target_gens / 2 + 3));
    auto pool = vertex_pool(nverts);

    // rep[t][v]: the class representative of v after the merges of times <= t
    std::vector<std::vector<uint32_t>> rep(max_depth + 1, std::vector<uint32_t>(nverts));
    for (uint32_t v = 0; v < nverts; ++v) rep[0][v] = v;
    uint32_t merges_left = max_depth == 0 ? 0 : target_events;
    for (uint32_t t = 1; t <= max_depth; ++t) {
        rep[t] = rep[t - 1];
        uint32_t remaining = max_depth - t + 1;
        uint32_t quota = (merges_left + remaining - 1) / remaining;
        for (uint32_t k = 0; k < quota && merges_left > 0; ++k) {
            std::vector<uint32_t> alive;
            for (uint32_t v = 0; v < nverts; ++v)
                if (rep[t][v] == v) alive.push_back(v);
            if (alive.size() < 3) break;  // keep some vertices around
            uint32_t a = alive[r.below(static_cast<uint32_t>(alive.size()))];
            uint32_t b = alive[r.below(static_cast<uint32_t>(alive.size()))];
            if (a == b) continue;
            for (uint32_t v = 0; v < nverts; ++v)
                if (rep[t][v] == a) rep[t][v] = b;
            merges_left--;
        }
    }

    pointwise_tower pt;
    pt.base = p.get();
    pt.complexes.resize(t0);
    pt.edge_maps.resize(ps.edge_count());
    const auto& edges = ps.hasse_edges();
    for (uint32_t e = 0; e < edges.size(); ++e) {
        auto [y, x] = edges[e];
        for (uint32_t v = 0; v < nverts; ++v) {
            if (rep[depth[y]][v] != v) continue;  // only live classes appear in complexes
            uint32_t w = rep[depth[x]][v];
            if (w != v) pt.edge_maps[e][pool[v]] = pool[w];
        }
    }

    std::vector<std::vector<uint32_t>> in_edges(t0);
    for (uint32_t e = 0; e < edges.size(); ++e) in_edges[edges[e].second].push_back(e);

    uint32_t per_node = std::max<uint32_t>(1, target_gens / std::max<std::size_t>(1, t0));
    for (grade_id x : ps.linear_extension()) {
        auto& cx = pt.complexes[x];
        for (uint32_t e : in_edges[x])
            for (const auto& s : pt.complexes[edges[e].first]) cx.insert(pt.map_simplex(e, s));
        std::vector<uint32_t> alive;
        for (uint32_t v = 0; v < nverts; ++v)
            if (rep[depth[x]][v] == v) alive.push_back(v);
        uint32_t quota = per_node + (r.chance(0.5) ? 1 : 0);
        for (uint32_t k = 0; k < quota; ++k) {
            uint32_t dim = r.below(3);
            if (alive.size() < dim + 1) dim = 0;
            std::set<uint32_t> picked;
            while (picked.size() < dim + 1)
                picked.insert(alive[r.below(static_cast<uint32_t>(alive.size()))]);
            std::vector<std::string> verts;
            for (uint32_t v : picked) verts.push_back(pool[v]);
            simplex s(verts);
            cx.insert(s);
            for (const auto& f : s.faces()) {
                cx.insert(f);
                for (const auto& ff : f.faces()) cx.insert(ff);
            }
        }
    }

    tower_bundle tb;
    tb.base = std::move(p);
    tb.tower = extract(pt);
    tb.tower.base = tb.base.get();
    return tb;
}

// Random transitively-reduced DAG plus a random tower on it.
inline tower_bundle random_tower(uint32_t nodes, uint32_t extra_edges, uint32_t target_gens,
                                 uint32_t target_events, uint64_t seed) {
    rng r(seed);
    std::vector<std::string> names;
    for (uint32_t i = 0; i < nodes; ++i) names.push_back("x" + std::to_string(i));

    std::set<std::pair<uint32_t, uint32_t>> raw;
    for (uint32_t i = 0; i + 1 < nodes; ++i)
        if (r.chance(0.8)) raw.insert({i, i + 1});
    for (uint32_t k = 0; k < extra_edges && nodes >= 2; ++k) {
        uint32_t a = r.below(nodes);
        uint32_t b = r.below(nodes);
        if (a == b) continue;
        raw.insert({std::min(a, b), std::max(a, b)});
    }
    // transitive reduction over the declaration order (which is topological)
    std::vector<std::vector<bool>> reach(nodes, std::vector<bool>(nodes, false));
    for (uint32_t i = 0; i < nodes; ++i) reach[i][i] = true;
    for (uint32_t j = nodes; j-- > 0;)
        for (const auto& [a, b] : raw)
            if (a == j)
                for (uint32_t k = 0; k < nodes; ++k) reach[a][k] = reach[a][k] || reach[b][k];
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [a, b] : raw) {
        bool redundant = false;
        for (const auto& [a2, z] : raw)
            if (a2 == a && z != b && reach[z][b]) {
                redundant = true;
                break;
            }
        if (!redundant) edges.push_back({names[a], names[b]});
    }
    auto p = std::make_shared<poset>(names, edges);
    return random_tower_over(std::move(p), target_gens, target_events, seed ^ 0x9e3779b97f4a7c15ull);
}

// Zigzag (fence) poset: minima m0..m_{k}, maxima j0..j_{k-1}, with
// m_i -> j_i and m_{i+1} -> j_i.
inline std::shared_ptr<poset> fence_poset(uint32_t teeth) {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    for (uint32_t i = 0; i <= teeth; ++i) nodes.push_back("m" + std::to_string(i));
    for (uint32_t i = 0; i < teeth; ++i) nodes.push_back("j" + std::to_string(i));
    for (uint32_t i = 0; i < teeth; ++i) {
        edges.push_back({"m" + std::to_string(i), "j" + std::to_string(i)});
        edges.push_back({"m" + std::to_string(i + 1), "j" + std::to_string(i)});
    }
    return std::make_shared<poset>(nodes, edges);
}

}  // namespace gen
}  // namespace ptower
