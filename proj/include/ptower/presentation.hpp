#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "graded.hpp"
#include "tower.hpp"
#include "union_find.hpp"

namespace ptower {

struct presentation_options {
    bool relrel = false;
    bool reduce = false;
    bool capture_active = false;
};

// A generator reference: the degree of its simplex plus the dense id within
// that degree.
struct gen_ref {
    int deg;
    uint32_t id;
    friend bool operator==(const gen_ref& a, const gen_ref& b) {
        return a.deg == b.deg && a.id == b.id;
    }
    friend bool operator<(const gen_ref& a, const gen_ref& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        return a.id < b.id;
    }
};

struct gen_entry {
    simplex simp;
    grade_id grade;
};

struct rel_entry {
    grade_id grade;
    std::vector<uint32_t> gens;  // one or two generator ids
};

struct relrel_entry {
    grade_id grade;
    std::vector<uint32_t> rels;  // sorted relation ids on the cycle
    bool removed = false;        // set by the per-grade reduction
};

struct degree_data {
    std::vector<gen_entry> gens;
    std::vector<rel_entry> rels;
    std::vector<relrel_entry> rel_rels;
    std::vector<std::vector<uint32_t>> boundary_cols;  // per gen: owners of its faces, one degree down

    std::size_t live_rel_rels() const {
        std::size_t n = 0;
        for (const auto& rr : rel_rels)
            if (!rr.removed) ++n;
        return n;
    }
};

using active_map = std::map<simplex, gen_ref>;

struct chain_presentation {
    const poset* base = nullptr;
    presentation_options opts;
    std::vector<degree_data> degrees;
    std::vector<active_map> active;  // per grade, if captured
    double wall_ms = 0.0;

    int max_degree() const { return static_cast<int>(degrees.size()) - 1; }

    const degree_data& deg(int d) const {
        static const degree_data empty;
        if (d < 0 || d >= static_cast<int>(degrees.size())) return empty;
        return degrees[static_cast<std::size_t>(d)];
    }

    std::vector<label> gen_labels(int d) const {
        std::vector<label> out;
        for (const auto& g : deg(d).gens) out.push_back({"g:" + g.simp.str(), g.grade});
        return out;
    }

    std::vector<label> rel_labels(int d) const {
        std::vector<label> out;
        const auto& rels = deg(d).rels;
        for (uint32_t i = 0; i < rels.size(); ++i)
            out.push_back({"r" + std::to_string(i), rels[i].grade});
        return out;
    }

    // Labels of the surviving relation-of-relation columns, renumbered in
    // insertion order.
    std::vector<label> relrel_labels(int d) const {
        std::vector<label> out;
        uint32_t k = 0;
        for (const auto& rr : deg(d).rel_rels)
            if (!rr.removed) out.push_back({"rr" + std::to_string(k++), rr.grade});
        return out;
    }

    // The presentation matrix of degree d: generators by relations.
    graded_matrix presentation_matrix(int d) const {
        const auto& dd = deg(d);
        gf2::matrix m(static_cast<uint32_t>(dd.gens.size()), static_cast<uint32_t>(dd.rels.size()));
        for (uint32_t j = 0; j < dd.rels.size(); ++j) {
            gf2::index_list col(dd.rels[j].gens.begin(), dd.rels[j].gens.end());
            std::sort(col.begin(), col.end());
            m.set_col(j, std::move(col));
        }
        return graded_matrix(base, gen_labels(d), rel_labels(d), std::move(m));
    }

    // Relations among relations of degree d (surviving columns only).
    graded_matrix relrel_matrix(int d) const {
        const auto& dd = deg(d);
        std::vector<label> cols = relrel_labels(d);
        gf2::matrix m(static_cast<uint32_t>(dd.rels.size()), static_cast<uint32_t>(cols.size()));
        uint32_t j = 0;
        for (const auto& rr : dd.rel_rels) {
            if (rr.removed) continue;
            gf2::index_list col(rr.rels.begin(), rr.rels.end());
            m.set_col(j++, std::move(col));
        }
        return graded_matrix(base, rel_labels(d), std::move(cols), std::move(m));
    }

    // The boundary lift of degree d: columns are degree-d generators, rows
    // are degree-(d-1) generators. For d = 0 the codomain is empty.
    graded_matrix boundary_matrix(int d) const {
        const auto& dd = deg(d);
        gf2::matrix m(static_cast<uint32_t>(deg(d - 1).gens.size()),
                      static_cast<uint32_t>(dd.gens.size()));
        for (uint32_t j = 0; j < dd.gens.size(); ++j) {
            gf2::index_list col(dd.boundary_cols[j].begin(), dd.boundary_cols[j].end());
            std::sort(col.begin(), col.end());
            m.set_col(j, std::move(col));
        }
        return graded_matrix(base, gen_labels(d - 1), gen_labels(d), std::move(m));
    }
};

namespace detail {

// Relation graph of one degree at the grade being processed. Vertex 0 is the
// graveyard; generator g is vertex g+1. Edges are relation ids.
struct relation_graph {
    struct edge {
        uint32_t rel;
        uint32_t u, v;
    };
    union_find uf;
    std::vector<edge> forest;      // inherited forest edges plus edges accepted at this grade
    std::vector<edge> non_forest;  // inherited edges that closed a cycle at union time
    std::vector<bool> seen_rel;

    bool knows(uint32_t rel) const { return rel < seen_rel.size() && seen_rel[rel]; }
    void mark(uint32_t rel) {
        if (seen_rel.size() <= rel) seen_rel.resize(rel + 1, false);
        seen_rel[rel] = true;
    }

    void add_inherited(const edge& e) {
        if (knows(e.rel)) return;
        mark(e.rel);
        if (uf.unite(e.u, e.v))
            forest.push_back(e);
        else
            non_forest.push_back(e);
    }

    // Returns true (and records the edge) if it does not close a cycle.
    bool try_accept(uint32_t rel, uint32_t u, uint32_t v) {
        if (!uf.unite(u, v)) return false;
        mark(rel);
        forest.push_back({rel, u, v});
        return true;
    }

    // Unique forest path between u and v, as the relation ids of its edges.
    std::vector<uint32_t> forest_path(uint32_t u, uint32_t v) const {
        std::map<uint32_t, std::vector<std::pair<uint32_t, uint32_t>>> adj;  // vertex -> (other, rel)
        for (const auto& e : forest) {
            adj[e.u].push_back({e.v, e.rel});
            adj[e.v].push_back({e.u, e.rel});
        }
        std::map<uint32_t, std::pair<uint32_t, uint32_t>> parent;  // vertex -> (from, rel)
        std::queue<uint32_t> q;
        q.push(u);
        parent[u] = {u, UINT32_MAX};
        while (!q.empty()) {
            uint32_t a = q.front();
            q.pop();
            if (a == v) break;
            for (auto [b, rel] : adj[a])
                if (!parent.count(b)) {
                    parent[b] = {a, rel};
                    q.push(b);
                }
        }
        std::vector<uint32_t> path;
        uint32_t cur = v;
        while (cur != u) {
            auto [from, rel] = parent.at(cur);
            path.push_back(rel);
            cur = from;
        }
        return path;
    }
};

}  // namespace detail

// Runs the sweep over a linear extension of the poset: at each grade, first
// inherit/collapse the active simplices of all predecessors, then install new
// generators, identify duplicates, and optionally emit and reduce relations
// of relations. All degrees are processed in one pass.
inline chain_presentation run_presentation(const poset_tower& t, presentation_options opts = {}) {
    auto t0 = std::chrono::steady_clock::now();
    const poset& p = *t.base;

    chain_presentation cp;
    cp.base = t.base;
    cp.opts = opts;
    int maxdeg = std::max(0, t.max_degree());
    cp.degrees.resize(static_cast<std::size_t>(maxdeg) + 1);

    // Per-edge vertex maps, as in the pointwise tower.
    std::vector<std::map<std::string, std::string>> edge_maps(p.edge_count());
    {
        const auto& edges = p.hasse_edges();
        std::map<std::pair<grade_id, grade_id>, uint32_t> edge_idx;
        for (uint32_t i = 0; i < edges.size(); ++i) edge_idx[edges[i]] = i;
        for (const auto& e : t.events) {
            uint32_t idx = edge_idx.at({e.from, e.to});
            if (!edge_maps[idx].emplace(e.source, e.target).second)
                throw duplicate_event_error("two events for vertex '" + e.source + "' on edge " +
                                            p.name(e.from) + " -> " + p.name(e.to));
        }
    }
    const auto& edges = p.hasse_edges();
    std::vector<std::vector<uint32_t>> in_edges(p.node_count());
    for (uint32_t i = 0; i < edges.size(); ++i) in_edges[edges[i].second].push_back(i);

    std::vector<std::vector<uint32_t>> gens_at(p.node_count());
    for (const auto& g : t.generators) gens_at[g.grade].push_back(g.id);

    // Sweep state.
    std::vector<std::map<simplex, std::vector<gen_ref>>> pending(p.node_count());
    std::vector<active_map> active(p.node_count());
    std::vector<std::map<int, std::vector<detail::relation_graph::edge>>> forests(p.node_count());

    auto grade_of_gen = [&](const gen_ref& g) { return cp.degrees[g.deg].gens[g.id].grade; };
    auto gen_order_key = [&](const gen_ref& g) {
        return std::make_pair(p.position(grade_of_gen(g)), g.id);
    };

    for (grade_id x : p.linear_extension()) {
        std::map<int, detail::relation_graph> graphs;
        auto graph_for = [&](int deg) -> detail::relation_graph& {
            auto it = graphs.find(deg);
            if (it != graphs.end()) return it->second;
            auto& g = graphs[deg];
            for (uint32_t e : in_edges[x]) {
                grade_id y = edges[e].first;
                auto fit = forests[y].find(deg);
                if (fit == forests[y].end()) continue;
                for (const auto& fe : fit->second) g.add_inherited(fe);
            }
            return g;
        };
        // Merge predecessor forests up front so connectivity always
        // propagates, even through inactive grades.
        for (uint32_t e : in_edges[x])
            for (const auto& [deg, fe] : forests[edges[e].first]) {
                (void)fe;
                graph_for(deg);
            }

        auto& pend = pending[x];
        auto add_pending = [&](const simplex& s, gen_ref g) {
            auto& v = pend[s];
            if (std::find(v.begin(), v.end(), g) == v.end()) v.push_back(g);
        };

        // Collapse: inherit predecessor actives through the edge maps; a
        // simplex whose image degenerates attaches its generator to the
        // graveyard, unless that edge would close a cycle.
        for (uint32_t e : in_edges[x]) {
            grade_id y = edges[e].first;
            const auto& emap = edge_maps[e];
            auto mapv = [&](const std::string& v) {
                auto it = emap.find(v);
                return it == emap.end() ? v : it->second;
            };
            for (const auto& [s, g] : active[y]) {
                simplex img = s.mapped(mapv);
                if (img.dim() == s.dim()) {
                    add_pending(img, g);
                } else {
                    auto& graph = graph_for(g.deg);
                    if (graph.try_accept(static_cast<uint32_t>(cp.degrees[g.deg].rels.size()),
                                         0, g.id + 1)) {
                        cp.degrees[g.deg].rels.push_back(rel_entry{x, {g.id}});
                    }
                }
            }
        }

        // Generator: install the new generators of this grade.
        std::vector<std::pair<uint32_t, gen_ref>> installed;
        for (uint32_t gid : gens_at[x]) {
            const auto& sg = t.generators[gid];
            int deg = sg.degree();
            auto& dd = cp.degrees[deg];
            uint32_t id = static_cast<uint32_t>(dd.gens.size());
            dd.gens.push_back(gen_entry{sg.simp, x});
            dd.boundary_cols.emplace_back();
            add_pending(sg.simp, gen_ref{deg, id});
            installed.push_back({gid, gen_ref{deg, id}});
        }

        // Identify duplicates: within each group sorted by the owning
        // generator's (grade position, id), the first entry survives and
        // consecutive entries are identified pairwise.
        active_map& act = active[x];
        for (auto& [s, entries] : pend) {
            std::sort(entries.begin(), entries.end(), [&](const gen_ref& a, const gen_ref& b) {
                return gen_order_key(a) < gen_order_key(b);
            });
            for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
                const gen_ref& a = entries[i];
                const gen_ref& b = entries[i + 1];
                auto& graph = graph_for(a.deg);
                if (graph.try_accept(static_cast<uint32_t>(cp.degrees[a.deg].rels.size()),
                                     a.id + 1, b.id + 1)) {
                    std::vector<uint32_t> support = {a.id, b.id};
                    cp.degrees[a.deg].rels.push_back(rel_entry{x, std::move(support)});
                }
            }
            act.emplace(s, entries.front());
        }

        // Boundary columns for the generators added at this grade, using the
        // now-unique active owners of their faces.
        for (const auto& [gid, ref] : installed) {
            const auto& sg = t.generators[gid];
            std::vector<uint32_t> owners;
            for (const auto& f : sg.simp.faces()) {
                auto it = act.find(f);
                if (it == act.end())
                    throw boundary_face_missing("face " + f.str() + " of generator " + sg.simp.str() +
                                                " at " + p.name(x) + " has no active representative");
                owners.push_back(it->second.id);
            }
            cp.degrees[ref.deg].boundary_cols[ref.id] = std::move(owners);
        }

        // Relations of relations: every inherited edge outside the forest
        // closes a cycle; emit the edge plus its forest path.
        if (opts.relrel) {
            for (auto& [deg, graph] : graphs) {
                for (const auto& e : graph.non_forest) {
                    std::vector<uint32_t> support = graph.forest_path(e.u, e.v);
                    support.push_back(e.rel);
                    std::sort(support.begin(), support.end());
                    cp.degrees[deg].rel_rels.push_back(relrel_entry{x, std::move(support), false});
                }
                if (opts.reduce) {
                    // Reduce the columns of grade <= x (in insertion order,
                    // which respects the linear extension) and drop columns
                    // born at x that become zero.
                    auto& rr = cp.degrees[deg].rel_rels;
                    std::map<uint32_t, std::vector<uint32_t>> pivots;
                    for (auto& entry : rr) {
                        if (entry.removed || !p.leq(entry.grade, x)) continue;
                        std::vector<uint32_t> cur = entry.rels;
                        while (!cur.empty()) {
                            auto it = pivots.find(cur.back());
                            if (it == pivots.end()) break;
                            cur = gf2::xor_cols(cur, it->second);
                        }
                        if (cur.empty()) {
                            if (entry.grade == x) entry.removed = true;
                        } else {
                            pivots[cur.back()] = std::move(cur);
                        }
                    }
                }
            }
        }

        // Persist this grade's spanning forests for the successors.
        for (auto& [deg, graph] : graphs) forests[x][deg] = std::move(graph.forest);
    }

    if (opts.capture_active) cp.active = std::move(active);

    // Structural size bounds: generators are a subset of the input, relation
    // columns are forest edges (at most one per generator per grade), and
    // relation-of-relation columns are non-forest inherited edges (at most
    // one per generator per poset edge).
    const std::size_t n = t.size();
    for (const auto& dd : cp.degrees) {
        if (dd.gens.size() > n) throw std::logic_error("presentation row count exceeds input size");
        if (dd.rels.size() > n * std::max<std::size_t>(1, p.node_count()))
            throw std::logic_error("presentation column count exceeds n * t0");
        if (dd.rel_rels.size() > n * std::max<std::size_t>(1, p.edge_count()))
            throw std::logic_error("second resolution column count exceeds n * t1");
    }

    cp.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return cp;
}

}  // namespace ptower
