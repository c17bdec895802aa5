#pragma once

// Exact vertex enumeration for bounded rational polyhedra by incremental
// halfspace insertion (double description in V-form).  Adjacency of two
// vertices is decided algebraically: the common tight constraints must span
// a hyperplane, i.e. have rank dim-1.

#include "wtc/matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace wtc {

struct Halfspace {
    std::vector<Rat> normal;  // normal . x >= offset
    Rat offset;
};

class VertexPolytope {
  public:
    // Start from a coordinate box: bounds[i] = [lo_i, hi_i].
    explicit VertexPolytope(const std::vector<std::pair<Rat, Rat>>& bounds) {
        dim_ = static_cast<int>(bounds.size());
        for (int i = 0; i < dim_; ++i) {
            Halfspace lo, hi;
            lo.normal.assign(dim_, Rat(0));
            hi.normal.assign(dim_, Rat(0));
            lo.normal[i] = 1;
            lo.offset = bounds[i].first;
            hi.normal[i] = -1;
            hi.offset = -bounds[i].second;
            constraints_.push_back(lo);
            constraints_.push_back(hi);
        }
        std::vector<Rat> v(dim_);
        long corners = 1L << dim_;
        for (long mask = 0; mask < corners; ++mask) {
            for (int i = 0; i < dim_; ++i)
                v[i] = (mask >> i & 1) ? bounds[i].second : bounds[i].first;
            vertices_.push_back(v);
        }
    }

    int dim() const { return dim_; }
    const std::vector<std::vector<Rat>>& vertices() const { return vertices_; }
    const std::vector<Halfspace>& constraints() const { return constraints_; }
    bool empty() const { return vertices_.empty(); }

    // Insert normal . x >= offset, updating the vertex set.
    void cut(const Halfspace& h) {
        if (static_cast<int>(h.normal.size()) != dim_)
            throw std::invalid_argument("polytope cut: dimension mismatch");
        std::vector<Rat> s(vertices_.size());
        bool any_neg = false;
        for (size_t i = 0; i < vertices_.size(); ++i) {
            s[i] = dot(h.normal, vertices_[i]) - h.offset;
            if (s[i] < 0) any_neg = true;
        }
        if (!any_neg) {
            constraints_.push_back(h);
            return;
        }

        // Tight sets against the current constraint list, as bitsets.
        size_t nc = constraints_.size();
        std::vector<std::vector<bool>> tight(vertices_.size(), std::vector<bool>(nc, false));
        for (size_t i = 0; i < vertices_.size(); ++i)
            for (size_t c = 0; c < nc; ++c)
                if (dot(constraints_[c].normal, vertices_[i]) == constraints_[c].offset)
                    tight[i][c] = true;

        std::vector<std::vector<Rat>> next;
        for (size_t i = 0; i < vertices_.size(); ++i)
            if (s[i] >= 0) next.push_back(vertices_[i]);

        for (size_t i = 0; i < vertices_.size(); ++i) {
            if (s[i] <= 0) continue;
            for (size_t j = 0; j < vertices_.size(); ++j) {
                if (s[j] >= 0) continue;
                if (!adjacent(i, j, tight)) continue;
                // point on the segment with normal . w = offset
                Rat t = s[i] / (s[i] - s[j]);
                std::vector<Rat> w(dim_);
                for (int k = 0; k < dim_; ++k)
                    w[k] = vertices_[i][k] + t * (vertices_[j][k] - vertices_[i][k]);
                if (std::find(next.begin(), next.end(), w) == next.end())
                    next.push_back(std::move(w));
            }
        }
        vertices_ = std::move(next);
        constraints_.push_back(h);
    }

    bool contains(const std::vector<Rat>& x) const {
        for (const auto& c : constraints_)
            if (dot(c.normal, x) < c.offset) return false;
        return true;
    }

  private:
    static Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        Rat v(0);
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != 0 && b[i] != 0) v += a[i] * b[i];
        return v;
    }

    bool adjacent(size_t i, size_t j, const std::vector<std::vector<bool>>& tight) const {
        std::vector<size_t> common;
        for (size_t c = 0; c < constraints_.size(); ++c)
            if (tight[i][c] && tight[j][c]) common.push_back(c);
        if (static_cast<int>(common.size()) < dim_ - 1) return false;
        RatMat m(static_cast<int>(common.size()), dim_);
        for (size_t r = 0; r < common.size(); ++r)
            for (int k = 0; k < dim_; ++k) m(static_cast<int>(r), k) = constraints_[common[r]].normal[k];
        return rank(m) == dim_ - 1;
    }

    int dim_ = 0;
    std::vector<std::vector<Rat>> vertices_;
    std::vector<Halfspace> constraints_;
};

}  // namespace wtc
