#pragma once

#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "ptower/generators.hpp"
#include "ptower/io.hpp"

namespace fixtures {

using namespace ptower;

// Three incomparable births of v meeting at x4, then the collapse v -> w.
inline tower_bundle fig7() {
    auto p = std::make_shared<poset>(
        std::vector<std::string>{"x0", "x1", "x2", "x3", "x4", "x5"},
        std::vector<std::pair<std::string, std::string>>{
            {"x0", "x1"}, {"x0", "x2"}, {"x0", "x3"}, {"x1", "x4"}, {"x2", "x4"}, {"x3", "x4"},
            {"x4", "x5"}});
    tower_bundle tb;
    tb.tower = make_tower(p.get(),
                          {{"x0", {"u"}},
                           {"x0", {"w"}},
                           {"x1", {"v"}},
                           {"x1", {"u", "v"}},
                           {"x2", {"v"}},
                           {"x2", {"u", "w"}},
                           {"x3", {"v"}},
                           {"x3", {"v", "w"}}},
                          {{"x4", "x5", "v", "w"}});
    tb.base = std::move(p);
    return tb;
}

// Inclusion tower on a double diamond: v born at x1 and x2, identified at
// the incomparable x3 and x4, the identifications coincide at x5 and x6,
// and the triangle fills the cycle at x6.
inline tower_bundle fig10() {
    auto p = std::make_shared<poset>(
        std::vector<std::string>{"x0", "x1", "x2", "x3", "x4", "x5", "x6"},
        std::vector<std::pair<std::string, std::string>>{
            {"x0", "x1"}, {"x0", "x2"}, {"x1", "x3"}, {"x2", "x3"}, {"x1", "x4"}, {"x2", "x4"},
            {"x3", "x5"}, {"x4", "x5"}, {"x3", "x6"}, {"x4", "x6"}});
    tower_bundle tb;
    tb.tower = make_tower(p.get(),
                          {{"x0", {"u"}},
                           {"x0", {"w"}},
                           {"x0", {"u", "w"}},
                           {"x1", {"v"}},
                           {"x1", {"u", "v"}},
                           {"x2", {"v"}},
                           {"x2", {"v", "w"}},
                           {"x6", {"u", "v", "w"}}},
                          {});
    tb.base = std::move(p);
    return tb;
}

// A second identification of the same pair arrives at t with the earlier
// one comparable, so the per-grade reduction drops the fresh column.
inline tower_bundle reduced_relrel_tower() {
    auto p = std::make_shared<poset>(
        std::vector<std::string>{"a1", "a2", "b1", "b2", "m", "c", "t"},
        std::vector<std::pair<std::string, std::string>>{
            {"a1", "b1"}, {"a2", "b1"}, {"a1", "b2"}, {"a2", "b2"}, {"b1", "m"}, {"b2", "m"},
            {"b2", "c"}, {"m", "t"}, {"c", "t"}});
    tower_bundle tb;
    tb.tower = make_tower(p.get(), {{"a1", {"v"}}, {"a2", {"v"}}}, {});
    tb.base = std::move(p);
    return tb;
}

// The seeded corpus used by the property suites: random posets with events,
// grids, chains and zigzag fences.
inline std::vector<tower_bundle> corpus(std::size_t random_count, uint64_t base_seed = 1000) {
    std::vector<tower_bundle> out;
    for (std::size_t i = 0; i < random_count; ++i) {
        uint64_t seed = base_seed + i;
        switch (i % 5) {
            case 0:
                out.push_back(gen::random_tower(6 + i % 20, 8 + i % 16, 10 + i % 24, 2 + i % 6, seed));
                break;
            case 1:
                out.push_back(gen::random_tower(10 + i % 16, 14 + i % 10, 16 + i % 20, 4 + i % 8, seed));
                break;
            case 2:
                out.push_back(gen::grid_tower(2 + i % 3, 2 + i % 4, 8 + i % 20, seed));
                break;
            case 3:
                out.push_back(gen::chain_tower(4 + i % 8, 6 + i % 16, seed));
                break;
            default:
                out.push_back(
                    gen::random_tower_over(gen::fence_poset(2 + i % 5), 12 + i % 18, 3 + i % 5, seed));
                break;
        }
    }
    return out;
}

inline std::string data_path(const std::string& name) {
    const char* dir = std::getenv("PTOWER_DATA");
    return std::string(dir ? dir : "data") + "/" + name;
}

inline std::string cli_path() {
    const char* p = std::getenv("PTOWER_CLI");
    return p ? p : "./build/ptower";
}

// Tiny dense reference solver over GF(2), used as the independent oracle for
// the multigraph solver tests.
namespace dense {

using row = std::vector<uint8_t>;

inline bool solvable(std::vector<row> a, row b) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && !a[piv][c]) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != r && a[i][c]) {
                for (std::size_t j = 0; j < cols; ++j) a[i][j] ^= a[r][j];
                b[i] ^= b[r];
            }
        }
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        bool all_zero = true;
        for (std::size_t j = 0; j < cols; ++j) all_zero = all_zero && !a[i][j];
        if (all_zero && b[i]) return false;
    }
    // rows above r can still be inconsistent when a pivot row has b set but
    // the row is zero; handled above since elimination zeroes them fully
    for (std::size_t i = 0; i < rows; ++i) {
        bool all_zero = true;
        for (std::size_t j = 0; j < cols; ++j) all_zero = all_zero && !a[i][j];
        if (all_zero && b[i]) return false;
    }
    return true;
}

}  // namespace dense
}  // namespace fixtures
