#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "grid.hpp"

namespace pathint {

/// Absolute slack for face tests, so grid coordinates that round onto a face
/// behave like the exact face.
inline constexpr double kFaceSlack = 1e-12;

/// Closed axis-aligned box [lower, upper].
struct Box {
    Point lower;
    Point upper;

    std::size_t dim() const { return lower.size(); }

    bool contains(const Point& x) const {
        for (std::size_t a = 0; a < dim(); ++a)
            if (x[a] < lower[a] - kFaceSlack || x[a] > upper[a] + kFaceSlack) return false;
        return true;
    }

    bool contains(const Box& inner) const {
        for (std::size_t a = 0; a < dim(); ++a)
            if (inner.lower[a] < lower[a] - kFaceSlack || inner.upper[a] > upper[a] + kFaceSlack)
                return false;
        return true;
    }

    double max_extent() const {
        double e = 0.0;
        for (std::size_t a = 0; a < dim(); ++a) e = std::max(e, upper[a] - lower[a]);
        return e;
    }
};

inline Box bounding_box(const GridSpec& grid) {
    Box b;
    for (const auto& ax : grid.axes()) {
        b.lower.push_back(ax.lower);
        b.upper.push_back(ax.upper);
    }
    return b;
}

/// Hole around a singular point: (y - left, y + right) per axis.
struct ExcisionBox {
    Point center;
    Point left;   ///< 1/c_i
    Point right;  ///< 1/d_i

    static ExcisionBox symmetric(Point center, double half_width) {
        const std::size_t n = center.size();
        return {std::move(center), Point(n, half_width), Point(n, half_width)};
    }

    void validate() const {
        if (left.size() != center.size() || right.size() != center.size())
            throw DomainError("excision box half-widths must match its center dimension");
        for (std::size_t a = 0; a < center.size(); ++a)
            if (!(left[a] > 0.0) || !(right[a] > 0.0))
                throw DomainError("excision box half-widths must be strictly positive");
    }

    /// Faces count as covered: points on a hole face are excluded from the region.
    bool covers(const Point& x) const {
        for (std::size_t a = 0; a < center.size(); ++a)
            if (x[a] < center[a] - left[a] - kFaceSlack || x[a] > center[a] + right[a] + kFaceSlack)
                return false;
        return true;
    }

    bool within(const ExcisionBox& outer) const {
        for (std::size_t a = 0; a < center.size(); ++a) {
            if (center[a] - left[a] < outer.center[a] - outer.left[a] - kFaceSlack) return false;
            if (center[a] + right[a] > outer.center[a] + outer.right[a] + kFaceSlack) return false;
        }
        return true;
    }

    double max_half_width() const {
        double w = 0.0;
        for (std::size_t a = 0; a < center.size(); ++a) w = std::max({w, left[a], right[a]});
        return w;
    }
};

/// Outer box with finitely many holes removed.
struct ExcisedRegion {
    Box outer;
    std::vector<ExcisionBox> holes;

    std::size_t dim() const { return outer.dim(); }

    void validate() const {
        if (outer.lower.size() != outer.upper.size() || outer.lower.empty())
            throw DomainError("region outer box is malformed");
        for (std::size_t a = 0; a < dim(); ++a)
            if (!(outer.upper[a] > outer.lower[a]))
                throw DomainError("region outer box has non-positive extent");
        for (const auto& h : holes) {
            if (h.center.size() != dim()) throw DomainError("hole dimension differs from region");
            h.validate();
        }
    }

    double max_hole_half_width() const {
        double w = 0.0;
        for (const auto& h : holes) w = std::max(w, h.max_half_width());
        return w;
    }
};

inline bool region_membership(const ExcisedRegion& region, const Point& x) {
    if (x.size() != region.dim()) throw DomainError("point dimension differs from region");
    if (!region.outer.contains(x)) return false;
    return std::none_of(region.holes.begin(), region.holes.end(),
                        [&](const ExcisionBox& h) { return h.covers(x); });
}

/// The region covering the whole grid, no holes.
inline ExcisedRegion full_region(const GridSpec& grid) { return {bounding_box(grid), {}}; }

/// Per-slice regions C^0 .. C^k.
struct RegionFamily {
    std::vector<ExcisedRegion> regions;

    std::size_t slices() const { return regions.empty() ? 0 : regions.size() - 1; }
    const ExcisedRegion& operator[](std::size_t l) const { return regions[l]; }

    static RegionFamily uniform(const ExcisedRegion& region, std::size_t k) {
        return {std::vector<ExcisedRegion>(k + 1, region)};
    }
};

/// Per-sample membership flags of a region on a grid.
inline std::vector<unsigned char> region_mask(const GridSpec& grid, const ExcisedRegion& region) {
    if (region.dim() != grid.dim()) throw DomainError("region dimension differs from grid");
    std::vector<unsigned char> mask(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        mask[i] = region_membership(region, grid.point(i)) ? 1 : 0;
    return mask;
}

inline void require_covers(const GridSpec& grid, const ExcisedRegion& region) {
    if (region.dim() != grid.dim()) throw DomainError("region dimension differs from grid");
    if (!bounding_box(grid).contains(region.outer))
        throw DomainError("grid does not cover the region's outer box");
}

}  // namespace pathint
