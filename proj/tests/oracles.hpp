#pragma once

// Test-only oracles, deliberately written as straight-line re-derivations
// independent of the library's own extraction/certification code paths.

#include <string>
#include <vector>

#include "homeolab/circle_lift.hpp"
#include "homeolab/pl_map.hpp"

namespace homeolab::oracle {

// Naive sign word: solve f(x) = x piece by piece, glue runs of fixed points
// by scanning a sorted solution list, and read gap signs from single
// midpoint evaluations. Encodes the result as a plain string like
// "[pt] + [pt] - [seg]".
inline std::string naive_word(const PLMap& f) {
    const auto& pts = f.points();
    // Collect solution intervals [a,b] (points have a == b).
    std::vector<std::pair<Rat, Rat>> sols;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Rat da = pts[i].y - pts[i].x;
        Rat db = pts[i + 1].y - pts[i + 1].x;
        if (da.is_zero() && db.is_zero()) {
            sols.push_back({pts[i].x, pts[i + 1].x});
        } else if (da.is_zero()) {
            sols.push_back({pts[i].x, pts[i].x});
        } else if (db.is_zero()) {
            sols.push_back({pts[i + 1].x, pts[i + 1].x});
        } else if ((da.sign() > 0) != (db.sign() > 0)) {
            Rat r = pts[i].x + (pts[i + 1].x - pts[i].x) * da / (da - db);
            sols.push_back({r, r});
        }
    }
    std::sort(sols.begin(), sols.end());
    std::vector<std::pair<Rat, Rat>> comps;
    for (const auto& s : sols) {
        if (!comps.empty() && s.first <= comps.back().second)
            comps.back().second = max(comps.back().second, s.second);
        else
            comps.push_back(s);
    }
    std::string out;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        out += comps[i].first == comps[i].second ? "[pt]" : "[seg]";
        if (i + 1 < comps.size()) {
            Rat mid = midpoint(comps[i].second, comps[i + 1].first);
            out += (eval(f, mid) - mid).sign() > 0 ? " + " : " - ";
        }
    }
    return out;
}

// Exact number of isolated solutions of f = g strictly inside (lo, hi),
// written against the raw breakpoint lists.
inline std::size_t naive_root_count(const PLMap& f, const PLMap& g, const Rat& lo,
                                    const Rat& hi) {
    std::vector<Rat> grid{lo, hi};
    for (const auto& p : f.points())
        if (p.x > lo && p.x < hi) grid.push_back(p.x);
    for (const auto& p : g.points())
        if (p.x > lo && p.x < hi) grid.push_back(p.x);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<Rat> roots;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        Rat da = eval(f, grid[i]) - eval(g, grid[i]);
        Rat db = eval(f, grid[i + 1]) - eval(g, grid[i + 1]);
        if (da.is_zero() && grid[i] > lo) roots.push_back(grid[i]);
        if ((da.sign() > 0 && db.sign() < 0) || (da.sign() < 0 && db.sign() > 0))
            roots.push_back(grid[i] + (grid[i + 1] - grid[i]) * da / (da - db));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots.size();
}

// Displacement sign of a lift at x for translation t: sign(F(x) - x - t).
inline int lift_disp_sign(const CircleLift& F, const Rat& x, long t) {
    return (eval_lift(F, x) - x - Rat(t)).sign();
}

}  // namespace homeolab::oracle
