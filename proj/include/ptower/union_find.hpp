#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace ptower {

// Union-find with path compression and union by size. Elements can be added
// lazily via ensure().
class union_find {
  public:
    union_find() = default;
    explicit union_find(std::size_t n) { ensure(n); }

    void ensure(std::size_t n) {
        while (parent_.size() < n) {
            parent_.push_back(static_cast<uint32_t>(parent_.size()));
            size_.push_back(1);
        }
    }

    uint32_t find(uint32_t x) {
        ensure(x + 1);
        uint32_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            uint32_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    bool same(uint32_t a, uint32_t b) { return find(a) == find(b); }

    // Returns false if a and b were already in the same component.
    bool unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    std::size_t size() const { return parent_.size(); }

  private:
    std::vector<uint32_t> parent_;
    std::vector<uint32_t> size_;
};

}  // namespace ptower
