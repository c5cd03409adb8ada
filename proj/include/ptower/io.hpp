#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "graded.hpp"
#include "homology.hpp"
#include "pirep.hpp"
#include "presentation.hpp"
#include "tower.hpp"

namespace ptower {

// A parsed tower together with ownership of its poset.
struct tower_bundle {
    std::shared_ptr<poset> base;
    poset_tower tower;
};

namespace io {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

// Tower file grammar, one directive per line:
//   poset
//   node <id>
//   edge <pred> <succ>
//   tower
//   gen <grade> <v1> [v2 ...]
//   event <from> <to> <v> <w>
// '#' starts a comment.
inline tower_bundle parse_tower_text(std::istream& in) {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::pair<std::string, std::vector<std::string>>> gens;
    std::vector<std::tuple<std::string, std::string, std::string, std::string>> events;

    enum class section { none, poset, tower };
    section sec = section::none;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0];
        if (head == "poset") {
            if (toks.size() != 1) throw parse_error(lineno, "'poset' takes no arguments");
            sec = section::poset;
        } else if (head == "tower") {
            if (toks.size() != 1) throw parse_error(lineno, "'tower' takes no arguments");
            if (sec != section::poset) throw parse_error(lineno, "'tower' must follow the poset section");
            sec = section::tower;
        } else if (head == "node") {
            if (sec != section::poset) throw parse_error(lineno, "'node' outside the poset section");
            if (toks.size() != 2) throw parse_error(lineno, "'node' needs exactly one id");
            nodes.push_back(toks[1]);
        } else if (head == "edge") {
            if (sec != section::poset) throw parse_error(lineno, "'edge' outside the poset section");
            if (toks.size() != 3) throw parse_error(lineno, "'edge' needs two node ids");
            edges.push_back({toks[1], toks[2]});
        } else if (head == "gen") {
            if (sec != section::tower) throw parse_error(lineno, "'gen' outside the tower section");
            if (toks.size() < 3) throw parse_error(lineno, "'gen' needs a grade and at least one vertex");
            gens.push_back({toks[1], std::vector<std::string>(toks.begin() + 2, toks.end())});
        } else if (head == "event") {
            if (sec != section::tower) throw parse_error(lineno, "'event' needs <from> <to> <v> <w>");
            if (toks.size() != 5) throw parse_error(lineno, "'event' needs <from> <to> <v> <w>");
            events.push_back({toks[1], toks[2], toks[3], toks[4]});
        } else {
            throw parse_error(lineno, "unknown directive '" + head + "'");
        }
    }
    if (sec == section::none) throw parse_error(1, "missing 'poset' header");

    tower_bundle tb;
    tb.base = std::make_shared<poset>(nodes, edges);
    tb.tower = make_tower(tb.base.get(), std::move(gens), std::move(events));
    return tb;
}

inline tower_bundle parse_tower_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tower file '" + path + "'");
    return parse_tower_text(in);
}

inline std::string serialize_tower(const poset_tower& t) {
    const poset& p = *t.base;
    std::ostringstream out;
    out << "poset\n";
    for (const auto& n : p.node_names()) out << "node " << n << "\n";
    for (const auto& [a, b] : p.hasse_edges()) out << "edge " << p.name(a) << " " << p.name(b) << "\n";
    out << "tower\n";
    for (const auto& g : t.generators) {
        out << "gen " << p.name(g.grade);
        for (const auto& v : g.simp.vertices()) out << " " << v;
        out << "\n";
    }
    for (const auto& e : t.events)
        out << "event " << p.name(e.from) << " " << p.name(e.to) << " " << e.source << " "
            << e.target << "\n";
    return out.str();
}

// Canonical matrix block, compared byte for byte by the golden tests.
inline void serialize_matrix(std::ostream& out, const std::string& name, int degree,
                             const graded_matrix& m) {
    const poset& p = m.base();
    out << "matrix " << name << " degree " << degree << " rows " << m.rows() << " cols "
        << m.cols() << "\n";
    for (uint32_t i = 0; i < m.rows(); ++i)
        out << "row " << i << " " << m.row_labels()[i].name << "@" << p.name(m.row_labels()[i].grade)
            << "\n";
    for (uint32_t j = 0; j < m.cols(); ++j) {
        out << "col " << j << " " << m.col_labels()[j].name << "@" << p.name(m.col_labels()[j].grade)
            << " :";
        for (uint32_t i : m.entries().col(j)) out << " " << i;
        out << "\n";
    }
}

inline void serialize_presentation(std::ostream& out, const chain_presentation& cp, int only_degree = -1) {
    for (int d = 0; d <= cp.max_degree(); ++d) {
        if (only_degree >= 0 && d != only_degree) continue;
        serialize_matrix(out, "presentation", d, cp.presentation_matrix(d));
        if (cp.opts.relrel) serialize_matrix(out, "relrel", d, cp.relrel_matrix(d));
        serialize_matrix(out, "boundary", d, cp.boundary_matrix(d));
    }
}

inline void serialize_pirep(std::ostream& out, const pirep& pr) {
    out << "pirep degree " << pr.degree << "\n";
    serialize_matrix(out, "d_out", pr.degree, pr.d_out);
    serialize_matrix(out, "d_in", pr.degree, pr.d_in);
}

inline void serialize_homology(std::ostream& out, const homology_presentation_t& hp, int degree) {
    const poset& p = hp.relations.base();
    out << "homology degree " << degree << " generators " << hp.generators().size() << "\n";
    for (uint32_t i = 0; i < hp.generators().size(); ++i)
        out << "gen " << i << " " << hp.generators()[i].name << "@"
            << p.name(hp.generators()[i].grade) << "\n";
    serialize_matrix(out, "relations", degree, hp.relations);
}

}  // namespace io
}  // namespace ptower
