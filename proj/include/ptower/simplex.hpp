#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ptower {

// An abstract simplex: a strictly sorted list of vertex names. Sorting is
// lexicographic on the names, which makes keys canonical and output stable.
class simplex {
  public:
    simplex() = default;

    explicit simplex(std::vector<std::string> verts) : verts_(std::move(verts)) {
        std::sort(verts_.begin(), verts_.end());
        for (std::size_t i = 1; i < verts_.size(); ++i)
            if (verts_[i] == verts_[i - 1])
                throw invalid_tower_error("repeated vertex '" + verts_[i] + "' in simplex");
    }

    // Builds the image of this simplex under a vertex map, deduplicating
    // repeated images. The result may have lower dimension.
    template <typename Map>
    simplex mapped(Map&& f) const {
        std::vector<std::string> image;
        image.reserve(verts_.size());
        for (const auto& v : verts_) image.push_back(f(v));
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        simplex s;
        s.verts_ = std::move(image);
        return s;
    }

    int dim() const { return static_cast<int>(verts_.size()) - 1; }
    const std::vector<std::string>& vertices() const { return verts_; }
    bool empty() const { return verts_.empty(); }

    // The codimension-one faces, in the canonical order given by omitting
    // vertices from first to last. Empty for vertices.
    std::vector<simplex> faces() const {
        std::vector<simplex> out;
        if (verts_.size() <= 1) return out;
        for (std::size_t skip = 0; skip < verts_.size(); ++skip) {
            simplex f;
            for (std::size_t i = 0; i < verts_.size(); ++i)
                if (i != skip) f.verts_.push_back(verts_[i]);
            out.push_back(std::move(f));
        }
        return out;
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            if (i) out += '.';
            out += verts_[i];
        }
        return out;
    }

    friend bool operator==(const simplex& a, const simplex& b) { return a.verts_ == b.verts_; }
    friend bool operator!=(const simplex& a, const simplex& b) { return !(a == b); }
    friend bool operator<(const simplex& a, const simplex& b) {
        if (a.verts_.size() != b.verts_.size()) return a.verts_.size() < b.verts_.size();
        return a.verts_ < b.verts_;
    }

  private:
    std::vector<std::string> verts_;
};

}  // namespace ptower
