#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ptower {

using grade_id = uint32_t;

// A finite poset given by its Hasse diagram. Nodes keep their declaration
// order, which is the tie-break order for every deterministic choice
// downstream. Reachability is precomputed as per-node bitsets, so leq() is
// O(1) after construction.
class poset {
  public:
    poset(std::vector<std::string> nodes, const std::vector<std::pair<std::string, std::string>>& edges) {
        names_ = std::move(nodes);
        for (grade_id i = 0; i < names_.size(); ++i) {
            if (!index_.emplace(names_[i], i).second)
                throw invalid_tower_error("duplicate poset node '" + names_[i] + "'");
        }
        succs_.resize(names_.size());
        preds_.resize(names_.size());
        std::set<std::pair<grade_id, grade_id>> seen;
        for (const auto& [from, to] : edges) {
            grade_id a = id_of(from);
            grade_id b = id_of(to);
            if (a == b) throw cycle_error("self edge on node '" + from + "'");
            if (!seen.emplace(a, b).second)
                throw redundant_edge_error("duplicate hasse edge " + from + " -> " + to);
            succs_[a].push_back(b);
            preds_[b].push_back(a);
            edges_.emplace_back(a, b);
        }
        for (auto& v : succs_) std::sort(v.begin(), v.end());
        for (auto& v : preds_) std::sort(v.begin(), v.end());

        topo_order();
        build_reach();

        // Hasse means transitively reduced: an edge (a,b) must not be implied
        // by a longer path a -> z -> ... -> b.
        for (const auto& [a, b] : edges_)
            for (grade_id z : succs_[a])
                if (z != b && leq(z, b))
                    throw redundant_edge_error("edge " + names_[a] + " -> " + names_[b] +
                                               " is implied by a longer path");
    }

    std::size_t node_count() const { return names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::string>& node_names() const { return names_; }
    const std::string& name(grade_id x) const { return names_[x]; }

    grade_id id_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw unknown_node_error("unknown poset node '" + name + "'");
        return it->second;
    }
    bool has_node(const std::string& name) const { return index_.count(name) != 0; }

    bool leq(grade_id x, grade_id y) const {
        check(x);
        check(y);
        return (reach_[x][y >> 6] >> (y & 63)) & 1u;
    }
    bool lt(grade_id x, grade_id y) const { return x != y && leq(x, y); }

    // Immediate Hasse predecessors/successors, in declaration order.
    const std::vector<grade_id>& predecessors(grade_id x) const {
        check(x);
        return preds_[x];
    }
    const std::vector<grade_id>& successors(grade_id x) const {
        check(x);
        return succs_[x];
    }
    const std::vector<std::pair<grade_id, grade_id>>& hasse_edges() const { return edges_; }

    // Topological order with ready nodes taken in declaration order.
    const std::vector<grade_id>& linear_extension() const { return order_; }
    uint32_t position(grade_id x) const {
        check(x);
        return pos_[x];
    }

    bool has_hasse_edge(grade_id a, grade_id b) const {
        return std::binary_search(succs_[a].begin(), succs_[a].end(), b);
    }

  private:
    void check(grade_id x) const {
        if (x >= names_.size()) throw unknown_node_error("grade id out of range");
    }

    void topo_order() {
        std::vector<uint32_t> indeg(names_.size(), 0);
        for (const auto& [a, b] : edges_) indeg[b]++;
        std::set<grade_id> ready;
        for (grade_id i = 0; i < names_.size(); ++i)
            if (indeg[i] == 0) ready.insert(i);
        order_.reserve(names_.size());
        while (!ready.empty()) {
            grade_id x = *ready.begin();
            ready.erase(ready.begin());
            order_.push_back(x);
            for (grade_id y : succs_[x])
                if (--indeg[y] == 0) ready.insert(y);
        }
        if (order_.size() != names_.size()) throw cycle_error("poset hasse diagram has a directed cycle");
        pos_.resize(names_.size());
        for (uint32_t i = 0; i < order_.size(); ++i) pos_[order_[i]] = i;
    }

    void build_reach() {
        std::size_t words = (names_.size() + 63) / 64;
        reach_.assign(names_.size(), std::vector<uint64_t>(words, 0));
        for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
            grade_id x = *it;
            reach_[x][x >> 6] |= uint64_t(1) << (x & 63);
            for (grade_id y : succs_[x])
                for (std::size_t w = 0; w < words; ++w) reach_[x][w] |= reach_[y][w];
        }
    }

    std::vector<std::string> names_;
    std::map<std::string, grade_id> index_;
    std::vector<std::vector<grade_id>> succs_;
    std::vector<std::vector<grade_id>> preds_;
    std::vector<std::pair<grade_id, grade_id>> edges_;
    std::vector<grade_id> order_;
    std::vector<uint32_t> pos_;
    std::vector<std::vector<uint64_t>> reach_;
};

}  // namespace ptower
