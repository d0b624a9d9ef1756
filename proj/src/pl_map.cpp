#include "homeolab/pl_map.hpp"

#include <algorithm>

#include "homeolab/errors.hpp"

namespace homeolab {

namespace {

const Rat kZero(0);
const Rat kOne(1);

void check_ceiling(std::size_t count, std::size_t ceiling, const char* op) {
    if (count > ceiling)
        throw ResourceLimitError(std::string(op) + ": piece count " +
                                 std::to_string(count) + " exceeds ceiling " +
                                 std::to_string(ceiling));
}

bool collinear(const Breakpoint& a, const Breakpoint& b, const Breakpoint& c) {
    return (b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x);
}

}  // namespace

PLMap::PLMap(std::vector<Breakpoint> points, bool require_interval)
    : pts_(std::move(points)) {
    if (pts_.size() < 2) throw InvariantError("PLMap needs at least two breakpoints");
    if (pts_.front().x != kZero) throw InvariantError("PLMap: x_0 must be 0");
    if (pts_.back().x != kOne) throw InvariantError("PLMap: x_m must be 1");
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
        if (pts_[i].x >= pts_[i + 1].x)
            throw InvariantError("PLMap: abscissae must be strictly increasing");
        if (pts_[i].y >= pts_[i + 1].y)
            throw InvariantError("PLMap: ordinates must be strictly increasing");
    }
    if (require_interval) {
        if (pts_.front().y != kZero || pts_.back().y != kOne)
            throw InvariantError("interval PLMap must fix 0 and 1");
    }
}

PLMap PLMap::identity() {
    return PLMap({{kZero, kZero}, {kOne, kOne}});
}

PLMap PLMap::tent(const Rat& a) {
    if (a <= kZero || a >= kOne) throw DomainError("tent parameter must lie in (0,1)");
    return canonicalize(PLMap({{kZero, kZero}, {Rat(1, 2), a}, {kOne, kOne}}));
}

bool PLMap::is_interval_map() const {
    return pts_.front().y == kZero && pts_.back().y == kOne;
}

bool PLMap::is_identity() const {
    for (const auto& p : pts_)
        if (p.x != p.y) return false;
    return true;
}

namespace {

// Index i with x in [pts[i].x, pts[i+1].x].
std::size_t segment_index(const std::vector<Breakpoint>& pts, const Rat& x) {
    auto it = std::upper_bound(pts.begin(), pts.end(), x,
                               [](const Rat& v, const Breakpoint& p) { return v < p.x; });
    std::size_t i = static_cast<std::size_t>(it - pts.begin());
    if (i == 0) throw DomainError("evaluation point below domain");
    if (i == pts.size()) {
        if (x == pts.back().x) return pts.size() - 2;
        throw DomainError("evaluation point above domain");
    }
    return i - 1;
}

Rat interpolate(const Breakpoint& a, const Breakpoint& b, const Rat& x) {
    if (x == a.x) return a.y;
    if (x == b.x) return b.y;
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

}  // namespace

Rat eval(const PLMap& f, const Rat& x) {
    if (x < kZero || x > kOne) throw DomainError("eval: x outside [0,1]");
    std::size_t i = segment_index(f.points(), x);
    return interpolate(f.points()[i], f.points()[i + 1], x);
}

Rat eval_inverse(const PLMap& f, const Rat& y) {
    const auto& pts = f.points();
    if (y < pts.front().y || y > pts.back().y)
        throw DomainError("eval_inverse: y outside range");
    auto it = std::upper_bound(pts.begin(), pts.end(), y,
                               [](const Rat& v, const Breakpoint& p) { return v < p.y; });
    std::size_t i = static_cast<std::size_t>(it - pts.begin());
    if (i == pts.size()) i = pts.size() - 1;
    if (i == 0) i = 1;
    const Breakpoint& a = pts[i - 1];
    const Breakpoint& b = pts[i];
    if (y == a.y) return a.x;
    if (y == b.y) return b.x;
    return a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y);
}

std::pair<Rat, Rat> piece_at(const PLMap& f, const Rat& x) {
    const auto& pts = f.points();
    std::size_t i = segment_index(pts, x);
    Rat slope = (pts[i + 1].y - pts[i].y) / (pts[i + 1].x - pts[i].x);
    Rat intercept = pts[i].y - slope * pts[i].x;
    return {slope, intercept};
}

PLMap canonicalize(const PLMap& f) {
    const auto& pts = f.points();
    std::vector<Breakpoint> out;
    out.reserve(pts.size());
    out.push_back(pts.front());
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        if (!collinear(out.back(), pts[i], pts[i + 1])) out.push_back(pts[i]);
    }
    out.push_back(pts.back());
    return PLMap(std::move(out), /*require_interval=*/false);
}

PLMap compose(const PLMap& f, const PLMap& g, std::size_t piece_ceiling) {
    std::vector<Rat> xs;
    xs.reserve(f.points().size() + g.points().size());
    for (const auto& p : g.points()) xs.push_back(p.x);
    // Pull back f's breakpoints through g; only ordinates inside g's range
    // give new abscissae (for interval maps that is all of them).
    for (const auto& p : f.points()) {
        if (p.x >= g.points().front().y && p.x <= g.points().back().y)
            xs.push_back(eval_inverse(g, p.x));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    check_ceiling(xs.size(), piece_ceiling, "compose");

    std::vector<Breakpoint> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back({x, eval(f, eval(g, x))});
    return canonicalize(PLMap(std::move(out), /*require_interval=*/false));
}

PLMap invert(const PLMap& f) {
    std::vector<Breakpoint> out;
    out.reserve(f.points().size());
    for (const auto& p : f.points()) out.push_back({p.y, p.x});
    return PLMap(std::move(out), /*require_interval=*/false);
}

namespace {

PLMap envelope_pair(const PLMap& f, const PLMap& g, bool lower,
                    std::size_t piece_ceiling) {
    std::vector<Rat> xs = merged_grid(f, g);
    // Insert a breakpoint wherever the two graphs cross transversally.
    std::vector<Rat> crossings;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        Rat d_lo = eval(f, xs[i]) - eval(g, xs[i]);
        Rat d_hi = eval(f, xs[i + 1]) - eval(g, xs[i + 1]);
        if (d_lo.sign() * d_hi.sign() < 0) {
            // Root of the linear difference on this piece.
            crossings.push_back(xs[i] + (xs[i + 1] - xs[i]) * d_lo / (d_lo - d_hi));
        }
    }
    xs.insert(xs.end(), crossings.begin(), crossings.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    check_ceiling(xs.size(), piece_ceiling, "envelope");

    std::vector<Breakpoint> out;
    out.reserve(xs.size());
    for (const auto& x : xs) {
        Rat fv = eval(f, x), gv = eval(g, x);
        out.push_back({x, lower ? min(fv, gv) : max(fv, gv)});
    }
    return canonicalize(PLMap(std::move(out)));
}

PLMap envelope(const std::vector<PLMap>& family, bool lower,
               std::size_t piece_ceiling) {
    if (family.empty()) throw DomainError("envelope of an empty family");
    PLMap acc = canonicalize(family.front());
    for (std::size_t i = 1; i < family.size(); ++i)
        acc = envelope_pair(acc, family[i], lower, piece_ceiling);
    return acc;
}

}  // namespace

PLMap min_envelope(const std::vector<PLMap>& family, std::size_t piece_ceiling) {
    return envelope(family, /*lower=*/true, piece_ceiling);
}

PLMap max_envelope(const std::vector<PLMap>& family, std::size_t piece_ceiling) {
    return envelope(family, /*lower=*/false, piece_ceiling);
}

std::vector<Rat> merged_grid(const PLMap& f, const PLMap& g) {
    std::vector<Rat> xs;
    xs.reserve(f.points().size() + g.points().size());
    for (const auto& p : f.points()) xs.push_back(p.x);
    for (const auto& p : g.points()) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

Rat sup_distance(const PLMap& f, const PLMap& g) {
    // |f-g| is PL on the merged grid, so its sup sits on a grid point.
    Rat best(0);
    for (const auto& x : merged_grid(f, g)) {
        Rat d = (eval(f, x) - eval(g, x)).abs();
        if (d > best) best = d;
    }
    return best;
}

Rat symmetric_distance(const PLMap& f, const PLMap& g) {
    return sup_distance(f, g) + sup_distance(invert(f), invert(g));
}

std::pair<std::size_t, bool> crossing_count(const PLMap& f, const PLMap& g,
                                            const Rat& lo, const Rat& hi) {
    if (lo >= hi) throw DomainError("crossing_count: empty window");
    std::vector<Rat> xs;
    xs.push_back(lo);
    for (const auto& x : merged_grid(f, g))
        if (x > lo && x < hi) xs.push_back(x);
    xs.push_back(hi);

    std::vector<Rat> roots;
    bool has_segment = false;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        Rat d_lo = eval(f, xs[i]) - eval(g, xs[i]);
        Rat d_hi = eval(f, xs[i + 1]) - eval(g, xs[i + 1]);
        if (d_lo.is_zero() && d_hi.is_zero()) {
            has_segment = true;
            continue;
        }
        if (d_lo.is_zero()) {
            if (xs[i] > lo) roots.push_back(xs[i]);
        }
        if (d_hi.is_zero()) {
            if (xs[i + 1] < hi) roots.push_back(xs[i + 1]);
        }
        if (d_lo.sign() * d_hi.sign() < 0)
            roots.push_back(xs[i] + (xs[i + 1] - xs[i]) * d_lo / (d_lo - d_hi));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return {roots.size(), has_segment};
}

}  // namespace homeolab
