#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "optocool/errors.hpp"
#include "optocool/sweep.hpp"

namespace optocool {

namespace {

using Point = std::array<double, 2>;

struct Segment {
    Point a, b;
};

// Linear interpolation along a cell edge. Both cells sharing an edge call
// this with identical arguments, so shared crossing points are bit-identical
// and polyline stitching can key on exact coordinates.
Point interp(const Point& p, double vp, const Point& q, double vq, double level) {
    const double t = (level - vp) / (vq - vp);
    return {p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])};
}

std::vector<Polyline> stitch(std::vector<Segment>& segments) {
    std::map<Point, std::vector<std::size_t>> ends;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        ends[segments[s].a].push_back(s);
        ends[segments[s].b].push_back(s);
    }

    std::vector<bool> used(segments.size(), false);
    std::vector<Polyline> lines;

    auto walk = [&](std::size_t start) {
        Polyline line;
        std::size_t s = start;
        Point cursor = segments[s].a;
        line.points.push_back(cursor);
        for (;;) {
            used[s] = true;
            cursor = (segments[s].a == cursor) ? segments[s].b : segments[s].a;
            line.points.push_back(cursor);
            std::size_t next = segments.size();
            for (std::size_t cand : ends[cursor])
                if (!used[cand]) { next = cand; break; }
            if (next == segments.size()) break;
            s = next;
        }
        return line;
    };

    // Open chains first (endpoints of degree 1), then leftover closed loops.
    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (used[s]) continue;
        const bool a_open = ends[segments[s].a].size() == 1;
        const bool b_open = ends[segments[s].b].size() == 1;
        if (!a_open && !b_open) continue;
        if (!a_open) std::swap(segments[s].a, segments[s].b);
        lines.push_back(walk(s));
    }
    for (std::size_t s = 0; s < segments.size(); ++s)
        if (!used[s]) lines.push_back(walk(s));
    return lines;
}

} // namespace

std::vector<ContourSet> extract_contours(const GridResult& grid, std::span<const double> levels) {
    if (grid.observable_name == "s_cc")
        throw ConfigError("contour extraction applies to scalar parameter sweeps");
    if (grid.n1 < 2 || grid.n2 < 2)
        throw ConfigError("contour extraction requires a 2-D grid");
    for (double level : levels)
        if (!std::isfinite(level))
            throw ConfigError("contour levels must be finite");

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : grid.values) {
        if (std::isnan(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    std::vector<ContourSet> sets;
    sets.reserve(levels.size());
    for (double level : levels) {
        ContourSet set;
        set.level = level;
        set.level_out_of_range = !(level >= lo && level <= hi);

        std::vector<Segment> segments;
        for (int i = 0; i + 1 < grid.n1; ++i) {
            for (int j = 0; j + 1 < grid.n2; ++j) {
                const double va = grid.value_at(i, j);
                const double vb = grid.value_at(i + 1, j);
                const double vc = grid.value_at(i + 1, j + 1);
                const double vd = grid.value_at(i, j + 1);
                if (std::isnan(va) || std::isnan(vb) || std::isnan(vc) || std::isnan(vd))
                    continue;

                const Point pa{grid.axis1_values[i], grid.axis2_values[j]};
                const Point pb{grid.axis1_values[i + 1], grid.axis2_values[j]};
                const Point pc{grid.axis1_values[i + 1], grid.axis2_values[j + 1]};
                const Point pd{grid.axis1_values[i], grid.axis2_values[j + 1]};

                const int code = (va > level ? 1 : 0) | (vb > level ? 2 : 0) |
                                 (vc > level ? 4 : 0) | (vd > level ? 8 : 0);
                if (code == 0 || code == 15) continue;

                // Edge crossings, each interpolated from the canonical
                // (lower-index) corner so neighbors share exact points.
                auto on_ab = [&] { return interp(pa, va, pb, vb, level); };
                auto on_bc = [&] { return interp(pb, vb, pc, vc, level); };
                auto on_cd = [&] { return interp(pd, vd, pc, vc, level); };
                auto on_da = [&] { return interp(pa, va, pd, vd, level); };

                switch (code) {
                    case 1: case 14: segments.push_back({on_da(), on_ab()}); break;
                    case 2: case 13: segments.push_back({on_ab(), on_bc()}); break;
                    case 4: case 11: segments.push_back({on_bc(), on_cd()}); break;
                    case 8: case 7:  segments.push_back({on_cd(), on_da()}); break;
                    case 3: case 12: segments.push_back({on_da(), on_bc()}); break;
                    case 6: case 9:  segments.push_back({on_ab(), on_cd()}); break;
                    case 5: case 10: {
                        // Saddle: resolve with the cell-center average.
                        const double center = 0.25 * (va + vb + vc + vd);
                        const bool center_high = center > level;
                        const bool corners_ac = (code == 5);
                        if (corners_ac == center_high) {
                            segments.push_back({on_da(), on_cd()});
                            segments.push_back({on_ab(), on_bc()});
                        } else {
                            segments.push_back({on_da(), on_ab()});
                            segments.push_back({on_bc(), on_cd()});
                        }
                        break;
                    }
                    default: break;
                }
            }
        }
        set.polylines = stitch(segments);
        sets.push_back(std::move(set));
    }
    return sets;
}

} // namespace optocool
