#include "homeolab/circle_lift.hpp"

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

// Interpolation on the base breakpoints for x in [0,1].
Rat base_eval(const std::vector<Breakpoint>& pts, const Rat& x) {
    auto it = std::upper_bound(pts.begin(), pts.end(), x,
                               [](const Rat& v, const Breakpoint& p) { return v < p.x; });
    std::size_t i = static_cast<std::size_t>(it - pts.begin());
    if (i == pts.size()) i = pts.size() - 1;
    if (i == 0) i = 1;
    const Breakpoint& a = pts[i - 1];
    const Breakpoint& b = pts[i];
    if (x == a.x) return a.y;
    if (x == b.x) return b.y;
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

}  // namespace

CircleLift::CircleLift(std::vector<Breakpoint> points) : pts_(std::move(points)) {
    if (pts_.size() < 2) throw InvariantError("CircleLift needs at least two breakpoints");
    if (pts_.front().x != kZero) throw InvariantError("CircleLift: x_0 must be 0");
    if (pts_.back().x != kOne) throw InvariantError("CircleLift: x_m must be 1");
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
        if (pts_[i].x >= pts_[i + 1].x)
            throw InvariantError("CircleLift: abscissae must be strictly increasing");
        if (pts_[i].y >= pts_[i + 1].y)
            throw InvariantError("CircleLift: ordinates must be strictly increasing");
    }
    if (pts_.back().y != pts_.front().y + kOne)
        throw InvariantError("CircleLift: y_m must equal y_0 + 1");
}

CircleLift CircleLift::rotation(const Rat& alpha) {
    return CircleLift({{kZero, alpha}, {kOne, alpha + kOne}});
}

bool CircleLift::is_normalized() const {
    return pts_.front().y >= kZero && pts_.front().y < kOne;
}

Rat eval_lift(const CircleLift& F, const Rat& x) {
    mpz_class k = x.floor();
    Rat shift(k, 1);
    return base_eval(F.points(), x - shift) + shift;
}

std::pair<Rat, Rat> lift_piece_at(const CircleLift& F, const Rat& x) {
    mpz_class k = x.floor();
    Rat shift(k, 1);
    Rat r = x - shift;  // in [0,1)
    const auto& pts = F.points();
    auto it = std::upper_bound(pts.begin(), pts.end(), r,
                               [](const Rat& v, const Breakpoint& p) { return v < p.x; });
    std::size_t i = static_cast<std::size_t>(it - pts.begin());
    if (i == 0) i = 1;
    if (i == pts.size()) i = pts.size() - 1;
    const Breakpoint& a = pts[i - 1];
    const Breakpoint& b = pts[i];
    Rat slope = (b.y - a.y) / (b.x - a.x);
    // F(t) = slope*(t - shift) + base_intercept + shift.
    Rat intercept = a.y - slope * a.x + shift * (kOne - slope);
    return {slope, intercept};
}

CircleLift normalized(const CircleLift& F) {
    mpz_class k = F.points().front().y.floor();
    if (k == 0) return F;
    Rat shift(k, 1);
    std::vector<Breakpoint> pts = F.points();
    for (auto& p : pts) p.y -= shift;
    return CircleLift(std::move(pts));
}

CircleLift add_constant(const CircleLift& F, const Rat& c) {
    std::vector<Breakpoint> pts = F.points();
    for (auto& p : pts) p.y += c;
    return CircleLift(std::move(pts));
}

CircleLift canonicalize_lift(const CircleLift& F) {
    const auto& pts = F.points();
    std::vector<Breakpoint> out;
    out.push_back(pts.front());
    for (std::size_t i = 1; i + 1 < pts.size(); ++i)
        if (!collinear(out.back(), pts[i], pts[i + 1])) out.push_back(pts[i]);
    out.push_back(pts.back());
    return CircleLift(std::move(out));
}

namespace {

// Inverse of the extended map: the unique t with F(t) = v.
Rat lift_inverse_eval(const CircleLift& F, const Rat& v) {
    const auto& pts = F.points();
    // Shift v into the base range [y_0, y_0 + 1], solve there, shift back.
    Rat offset = v - pts.front().y;
    mpz_class k = offset.floor();
    Rat shift(k, 1);
    Rat r = v - shift;
    auto it = std::upper_bound(pts.begin(), pts.end(), r,
                               [](const Rat& w, const Breakpoint& p) { return w < p.y; });
    std::size_t i = static_cast<std::size_t>(it - pts.begin());
    if (i == 0) i = 1;
    if (i == pts.size()) i = pts.size() - 1;
    const Breakpoint& a = pts[i - 1];
    const Breakpoint& b = pts[i];
    Rat t;
    if (r == a.y) t = a.x;
    else if (r == b.y) t = b.x;
    else t = a.x + (b.x - a.x) * (r - a.y) / (b.y - a.y);
    return t + shift;
}

}  // namespace

CircleLift compose(const CircleLift& F, const CircleLift& G,
                   std::size_t piece_ceiling) {
    // Result breakpoints: G's own, plus the pullbacks through G of every
    // breakpoint of the extended F that lands in G's range over [0,1].
    Rat range_lo = G.points().front().y;
    Rat range_hi = G.points().back().y;  // = range_lo + 1
    std::vector<Rat> xs;
    for (const auto& p : G.points()) xs.push_back(p.x);
    for (std::size_t i = 0; i + 1 < F.points().size(); ++i) {
        const Rat& a = F.points()[i].x;  // a in [0,1); shifts a+k sweep all breakpoints
        mpz_class k0 = (range_lo - a).floor();
        for (mpz_class k = k0; ; ++k) {
            Rat shifted = a + Rat(k, 1);
            if (shifted < range_lo) continue;
            if (shifted > range_hi) break;
            xs.push_back(lift_inverse_eval(G, shifted));
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    // Keep only [0,1] (pullbacks land there already; belt and braces).
    check_ceiling(xs.size(), piece_ceiling, "compose(lift)");

    std::vector<Breakpoint> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back({x, eval_lift(F, eval_lift(G, x))});
    return canonicalize_lift(CircleLift(std::move(out)));
}

CircleLift lift_power(const CircleLift& F, unsigned q, std::size_t piece_ceiling) {
    if (q == 0) throw DomainError("lift_power: q must be >= 1");
    CircleLift acc = F;
    for (unsigned i = 1; i < q; ++i) acc = compose(acc, F, piece_ceiling);
    return acc;
}

CircleLift invert_lift(const CircleLift& F) {
    // Graph of F^{-1} over one period, starting at x = y_0; rebase to [0,1].
    std::vector<Breakpoint> swapped;
    swapped.reserve(F.points().size());
    for (const auto& p : F.points()) swapped.push_back({p.y, p.x});

    auto eval_swapped = [&](const Rat& t) {
        // Extend the swapped graph by G(t+1) = G(t)+1.
        Rat offset = t - swapped.front().x;
        mpz_class k = offset.floor();
        Rat shift(k, 1);
        return base_eval(swapped, t - shift) + shift;  // base_eval works off x-order
    };

    std::vector<Rat> xs{kZero, kOne};
    for (std::size_t i = 0; i + 1 < swapped.size(); ++i) {
        const Rat& a = swapped[i].x;
        Rat af = a.frac();
        if (af > kZero && af < kOne) xs.push_back(af);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<Breakpoint> out;
    for (const auto& x : xs) out.push_back({x, eval_swapped(x)});
    return canonicalize_lift(CircleLift(std::move(out)));
}

CircleLift lift_from_circle_graph(const std::vector<std::pair<Rat, Rat>>& control) {
    if (control.size() < 1) throw DomainError("lift_from_circle_graph: no control points");
    for (const auto& [p, v] : control) {
        if (p < kZero || p >= kOne || v < kZero || v >= kOne)
            throw InvariantError("lift_from_circle_graph: controls must lie in [0,1)");
    }
    for (std::size_t i = 0; i + 1 < control.size(); ++i)
        if (control[i].first >= control[i + 1].first)
            throw InvariantError("lift_from_circle_graph: positions must be strictly increasing");

    // Unwrap values: each descent crosses 0, and a degree-one circle map
    // crosses exactly once per revolution.
    std::vector<Breakpoint> graph;
    Rat carry(0);
    for (std::size_t i = 0; i < control.size(); ++i) {
        if (i > 0 && control[i].second <= control[i - 1].second) carry += kOne;
        graph.push_back({control[i].first, control[i].second + carry});
    }
    if (carry > kOne)
        throw InvariantError("lift_from_circle_graph: values wind more than once");
    graph.push_back({control[0].first + kOne, control[0].second + kOne});
    for (std::size_t i = 0; i + 1 < graph.size(); ++i)
        if (graph[i].y >= graph[i + 1].y)
            throw InvariantError("lift_from_circle_graph: values not cyclically increasing");

    auto eval_graph = [&](const Rat& t) {
        Rat offset = t - graph.front().x;
        mpz_class k = offset.floor();
        Rat shift(k, 1);
        return base_eval(graph, t - shift) + shift;
    };

    std::vector<Rat> xs{kZero, kOne};
    for (std::size_t i = 0; i + 1 < graph.size(); ++i) {
        Rat af = graph[i].x.frac();
        if (af > kZero && af < kOne) xs.push_back(af);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<Breakpoint> out;
    for (const auto& x : xs) out.push_back({x, eval_graph(x)});
    return normalized(canonicalize_lift(CircleLift(std::move(out))));
}

}  // namespace homeolab
