#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "poset.hpp"
#include "simplex.hpp"

namespace ptower {

struct simplex_generator {
    uint32_t id;  // dense, in declaration order
    simplex simp;
    grade_id grade;

    int degree() const { return simp.dim(); }
};

// A vertex mapped to a different vertex along a Hasse edge.
struct edge_event {
    grade_id from;
    grade_id to;
    std::string source;
    std::string target;
};

// The compact encoding of a poset tower: the poset, the simplex generators
// and the edge events. The full functor is recovered by materialize().
struct poset_tower {
    const poset* base = nullptr;
    std::vector<simplex_generator> generators;
    std::vector<edge_event> events;

    std::size_t size() const { return generators.size() + events.size(); }

    int max_degree() const {
        int d = -1;
        for (const auto& g : generators) d = std::max(d, g.degree());
        return d;
    }
};

inline poset_tower make_tower(const poset* p, std::vector<std::pair<std::string, std::vector<std::string>>> gens,
                              std::vector<std::tuple<std::string, std::string, std::string, std::string>> events) {
    poset_tower t;
    t.base = p;
    for (auto& [grade, verts] : gens) {
        simplex_generator g;
        g.id = static_cast<uint32_t>(t.generators.size());
        g.simp = simplex(std::move(verts));
        g.grade = p->id_of(grade);
        t.generators.push_back(std::move(g));
    }
    std::set<std::tuple<grade_id, grade_id, std::string>> seen;
    for (auto& [from, to, v, w] : events) {
        edge_event e;
        e.from = p->id_of(from);
        e.to = p->id_of(to);
        e.source = v;
        e.target = w;
        if (v == w) throw invalid_tower_error("edge event maps vertex '" + v + "' to itself");
        if (!p->has_hasse_edge(e.from, e.to))
            throw invalid_tower_error("edge event on " + from + " -> " + to + " which is not a hasse edge");
        if (!seen.emplace(e.from, e.to, v).second)
            throw duplicate_event_error("two events for vertex '" + v + "' on edge " + from + " -> " + to);
        t.events.push_back(std::move(e));
    }
    return t;
}

// The tower evaluated pointwise: one simplex set per grade and one vertex map
// per Hasse edge.
struct pointwise_tower {
    const poset* base = nullptr;
    std::vector<std::set<simplex>> complexes;                        // per grade
    std::vector<std::map<std::string, std::string>> edge_maps;       // per hasse edge, non-identity part

    const std::set<simplex>& at(grade_id x) const { return complexes[x]; }

    uint32_t edge_index(grade_id y, grade_id x) const {
        const auto& edges = base->hasse_edges();
        for (uint32_t i = 0; i < edges.size(); ++i)
            if (edges[i].first == y && edges[i].second == x) return i;
        throw unknown_node_error("no hasse edge " + base->name(y) + " -> " + base->name(x));
    }

    std::string map_vertex(uint32_t edge, const std::string& v) const {
        auto it = edge_maps[edge].find(v);
        return it == edge_maps[edge].end() ? v : it->second;
    }

    simplex map_simplex(uint32_t edge, const simplex& s) const {
        return s.mapped([&](const std::string& v) { return map_vertex(edge, v); });
    }

    std::size_t simplex_count(grade_id x, int degree) const {
        std::size_t n = 0;
        for (const auto& s : complexes[x])
            if (s.dim() == degree) ++n;
        return n;
    }
};

// Reconstructs the functor from generators and events: sweep a linear
// extension, at each grade take the generators plus the images of all
// predecessor complexes. Throws on missing faces or duplicate events.
inline pointwise_tower materialize(const poset_tower& t) {
    const poset& p = *t.base;
    pointwise_tower pt;
    pt.base = t.base;
    pt.complexes.resize(p.node_count());
    pt.edge_maps.resize(p.edge_count());

    const auto& edges = p.hasse_edges();
    for (const auto& e : t.events) {
        uint32_t idx = pt.edge_index(e.from, e.to);
        if (!pt.edge_maps[idx].emplace(e.source, e.target).second)
            throw duplicate_event_error("two events for vertex '" + e.source + "' on edge " +
                                        p.name(e.from) + " -> " + p.name(e.to));
    }

    std::vector<std::vector<uint32_t>> gens_at(p.node_count());
    for (const auto& g : t.generators) gens_at[g.grade].push_back(g.id);

    std::vector<std::vector<uint32_t>> in_edges(p.node_count());
    for (uint32_t i = 0; i < edges.size(); ++i) in_edges[edges[i].second].push_back(i);

    for (grade_id x : p.linear_extension()) {
        auto& cx = pt.complexes[x];
        for (uint32_t gid : gens_at[x]) cx.insert(t.generators[gid].simp);
        for (uint32_t e : in_edges[x]) {
            grade_id y = edges[e].first;
            for (const auto& s : pt.complexes[y]) cx.insert(pt.map_simplex(e, s));
        }
        for (const auto& s : cx)
            for (const auto& f : s.faces())
                if (!cx.count(f))
                    throw face_closure_error("simplex " + s.str() + " at " + p.name(x) +
                                             " is missing its face " + f.str());
    }
    return pt;
}

struct validation_report {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Checks that the encoding reconstructs an honest functor: face closure,
// genuineness of every generator, path-independence of the composed maps,
// and well-formed events. Collects violations instead of aborting.
inline validation_report validate(const poset_tower& t) {
    const poset& p = *t.base;
    validation_report rep;

    std::set<std::tuple<grade_id, grade_id, std::string>> seen_events;
    for (const auto& e : t.events) {
        if (e.source == e.target)
            rep.violations.push_back("event maps vertex '" + e.source + "' to itself");
        if (!p.has_hasse_edge(e.from, e.to))
            rep.violations.push_back("event on " + p.name(e.from) + " -> " + p.name(e.to) +
                                     " which is not a hasse edge");
        if (!seen_events.emplace(e.from, e.to, e.source).second)
            rep.violations.push_back("duplicate event for vertex '" + e.source + "' on edge " +
                                     p.name(e.from) + " -> " + p.name(e.to));
    }

    std::set<std::pair<grade_id, simplex>> seen_gens;
    for (const auto& g : t.generators)
        if (!seen_gens.emplace(g.grade, g.simp).second)
            rep.violations.push_back("duplicate generator for " + g.simp.str() + " at " +
                                     p.name(g.grade));
    if (!rep.ok()) return rep;

    pointwise_tower pt;
    try {
        pt = materialize(t);
    } catch (const std::runtime_error& e) {
        rep.violations.push_back(e.what());
        return rep;
    }

    const auto& edges = p.hasse_edges();

    // Event sources must exist where the event fires.
    for (const auto& e : t.events)
        if (!pt.complexes[e.from].count(simplex({e.source})))
            rep.violations.push_back("event source vertex '" + e.source + "' is not in the complex at " +
                                     p.name(e.from));

    // Genuineness: a generator's simplex must not be hit by any predecessor.
    for (const auto& g : t.generators) {
        for (grade_id y : p.predecessors(g.grade)) {
            uint32_t e = pt.edge_index(y, g.grade);
            for (const auto& s : pt.complexes[y]) {
                if (pt.map_simplex(e, s) == g.simp) {
                    rep.violations.push_back("generator for " + g.simp.str() + " at " + p.name(g.grade) +
                                             " is not genuine: it is the image of " + s.str() + " from " +
                                             p.name(y));
                    break;
                }
            }
        }
    }

    // Functor check: the composite vertex map from any source grade to any
    // reachable grade must not depend on the path taken.
    std::vector<std::vector<uint32_t>> in_edges(p.node_count());
    for (uint32_t i = 0; i < edges.size(); ++i) in_edges[edges[i].second].push_back(i);
    for (grade_id z = 0; z < p.node_count(); ++z) {
        std::vector<std::map<std::string, std::string>> composite(p.node_count());
        std::vector<bool> defined(p.node_count(), false);
        for (const auto& s : pt.complexes[z])
            if (s.dim() == 0) composite[z][s.vertices()[0]] = s.vertices()[0];
        defined[z] = true;
        for (grade_id x : p.linear_extension()) {
            if (x == z || !p.lt(z, x)) continue;
            bool first = true;
            for (uint32_t e : in_edges[x]) {
                grade_id y = edges[e].first;
                if (!defined[y]) continue;
                std::map<std::string, std::string> cand;
                for (const auto& [v, img] : composite[y]) cand[v] = pt.map_vertex(e, img);
                if (first) {
                    composite[x] = std::move(cand);
                    first = false;
                } else if (cand != composite[x]) {
                    rep.violations.push_back("maps from " + p.name(z) + " to " + p.name(x) +
                                             " differ along different paths");
                }
            }
            defined[x] = !first;
        }
    }
    return rep;
}

// Recovers the compact encoding from a pointwise tower; inverse of
// materialize() on valid inputs.
inline poset_tower extract(const pointwise_tower& pt) {
    const poset& p = *pt.base;
    poset_tower t;
    t.base = pt.base;
    const auto& edges = p.hasse_edges();
    std::vector<std::vector<uint32_t>> in_edges(p.node_count());
    for (uint32_t i = 0; i < edges.size(); ++i) in_edges[edges[i].second].push_back(i);

    for (grade_id x : p.linear_extension()) {
        std::set<simplex> hit;
        for (uint32_t e : in_edges[x])
            for (const auto& s : pt.complexes[edges[e].first]) hit.insert(pt.map_simplex(e, s));
        for (const auto& s : pt.at(x)) {
            if (hit.count(s)) continue;
            simplex_generator g;
            g.id = static_cast<uint32_t>(t.generators.size());
            g.simp = s;
            g.grade = x;
            t.generators.push_back(std::move(g));
        }
    }
    for (uint32_t e = 0; e < edges.size(); ++e) {
        for (const auto& s : pt.complexes[edges[e].first]) {
            if (s.dim() != 0) continue;
            const std::string& v = s.vertices()[0];
            std::string w = pt.map_vertex(e, v);
            if (w != v)
                t.events.push_back(edge_event{edges[e].first, edges[e].second, v, w});
        }
    }
    return t;
}

}  // namespace ptower
