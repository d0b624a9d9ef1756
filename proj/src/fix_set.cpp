#include "homeolab/fix_set.hpp"

#include <algorithm>

#include "homeolab/errors.hpp"

namespace homeolab {

Letter to_letter(Sign s) { return s == Sign::Pos ? Letter::Pos : Letter::Neg; }

std::string letter_name(Letter l) {
    switch (l) {
        case Letter::Pos: return "+";
        case Letter::Neg: return "-";
        case Letter::Pt: return "pt";
        case Letter::Seg: return "seg";
    }
    return "?";
}

std::string IntervalInvariant::str() const {
    std::string s = "(" + letter_name(flag0) + ")";
    for (const auto& l : word) s += " " + letter_name(l);
    s += " (" + letter_name(flag1) + ")";
    return s;
}

Sign sign_on_gap(const PLMap& f, const Rat& lo, const Rat& hi) {
    if (lo >= hi) throw DomainError("sign_on_gap: empty gap");
    std::vector<Rat> grid;
    grid.push_back(lo);
    for (const auto& p : f.points())
        if (p.x > lo && p.x < hi) grid.push_back(p.x);
    grid.push_back(hi);

    // f - id is linear between consecutive grid points and vanishes only at
    // the gap ends, so its sign at interior grid points and piece midpoints
    // determines (and certifies) the sign on the whole open gap.
    int expected = 0;
    auto check = [&](const Rat& x) {
        int s = (eval(f, x) - x).sign();
        if (s == 0) throw InvariantError("sign_on_gap: fixed point inside gap");
        if (expected == 0) expected = s;
        if (s != expected) throw InvariantError("sign_on_gap: sign flip inside gap");
    };
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (i > 0) check(grid[i]);
        check(midpoint(grid[i], grid[i + 1]));
    }
    return expected > 0 ? Sign::Pos : Sign::Neg;
}

FixSet fix_set(const PLMap& f) {
    if (!f.is_interval_map())
        throw DomainError("fix_set requires an interval homeomorphism");
    const auto& pts = f.points();

    std::vector<FixComponent> raw;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Rat d_lo = pts[i].y - pts[i].x;
        Rat d_hi = pts[i + 1].y - pts[i + 1].x;
        if (d_lo.is_zero() && d_hi.is_zero()) {
            raw.push_back({pts[i].x, pts[i + 1].x});
            continue;
        }
        if (d_lo.is_zero()) raw.push_back({pts[i].x, pts[i].x});
        if (d_hi.is_zero()) raw.push_back({pts[i + 1].x, pts[i + 1].x});
        if (d_lo.sign() * d_hi.sign() < 0) {
            Rat root = pts[i].x + (pts[i + 1].x - pts[i].x) * d_lo / (d_lo - d_hi);
            raw.push_back({root, root});
        }
    }

    std::sort(raw.begin(), raw.end(),
              [](const FixComponent& u, const FixComponent& v) {
                  return u.a < v.a || (u.a == v.a && u.b < v.b);
              });

    FixSet out;
    for (const auto& c : raw) {
        if (!out.components.empty() && c.a <= out.components.back().b) {
            if (c.b > out.components.back().b) out.components.back().b = c.b;
        } else {
            out.components.push_back(c);
        }
    }

    if (out.components.empty() || out.components.front().a != Rat(0) ||
        out.components.back().b != Rat(1))
        throw InvariantError("fix_set: endpoints of [0,1] must be fixed");

    for (std::size_t i = 0; i + 1 < out.components.size(); ++i)
        out.gap_signs.push_back(
            sign_on_gap(f, out.components[i].b, out.components[i + 1].a));
    return out;
}

IntervalInvariant invariant_from(const FixSet& fs) {
    IntervalInvariant inv;
    auto type_of = [](const FixComponent& c) {
        return c.is_point() ? Letter::Pt : Letter::Seg;
    };
    inv.flag0 = type_of(fs.components.front());
    inv.flag1 = type_of(fs.components.back());
    for (std::size_t i = 0; i < fs.gap_signs.size(); ++i) {
        inv.word.push_back(to_letter(fs.gap_signs[i]));
        if (i + 1 < fs.gap_signs.size())
            inv.word.push_back(type_of(fs.components[i + 1]));
    }
    return inv;
}

IntervalInvariant sign_word(const PLMap& f) {
    return invariant_from(fix_set(f));
}

}  // namespace homeolab
