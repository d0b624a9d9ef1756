#include "homeolab/interval_dynamics.hpp"

#include <algorithm>

#include "homeolab/errors.hpp"

namespace homeolab {

std::string IntervalClass::str() const {
    switch (kind) {
        case Kind::InteriorSegment: return "haar-null(interior-segment)";
        case Kind::NonCrossingPoint: return "haar-null(non-crossing-point)";
        case Kind::NonHaarNull:
            return "non-haar-null(n=" + std::to_string(interior_fixed_points) +
                   ", " + sign_char(first_sign) + ")";
    }
    return "?";
}

IntervalClass classify(const PLMap& f) {
    FixSet fs = fix_set(f);
    for (const auto& c : fs.components) {
        if (!c.is_point()) {
            // Any nondegenerate fixed segment meets (0,1), so fix(f) has a
            // limit point there.
            return {IntervalClass::Kind::InteriorSegment, 0, Sign::Pos, c};
        }
    }
    for (std::size_t i = 1; i + 1 < fs.components.size(); ++i) {
        if (fs.gap_signs[i - 1] == fs.gap_signs[i]) {
            // Equal signs on both sides: f - id has a local extremum here.
            return {IntervalClass::Kind::NonCrossingPoint, 0, Sign::Pos,
                    fs.components[i]};
        }
    }
    IntervalClass out;
    out.kind = IntervalClass::Kind::NonHaarNull;
    out.interior_fixed_points = fs.components.size() - 2;
    out.first_sign = fs.gap_signs.front();
    return out;
}

namespace {

// The sequence the decision compares position by position:
// [type of 0-component] word... [type of 1-component].
std::vector<Letter> full_sequence(const IntervalInvariant& inv) {
    std::vector<Letter> seq;
    seq.reserve(inv.word.size() + 2);
    seq.push_back(inv.flag0);
    seq.insert(seq.end(), inv.word.begin(), inv.word.end());
    seq.push_back(inv.flag1);
    return seq;
}

// Sign pattern of a linear function on [a,b]: values at both ends plus the
// interior root when the ends have strictly opposite signs.
struct LinearSigns {
    int at_lo;
    int at_hi;
    std::optional<Rat> root;
};

LinearSigns linear_signs(const Rat& a, const Rat& b, const Rat& va, const Rat& vb) {
    LinearSigns s{va.sign(), vb.sign(), std::nullopt};
    if (s.at_lo * s.at_hi < 0) s.root = a + (b - a) * va / (va - vb);
    return s;
}

}  // namespace

std::vector<Rat> certify_sign_identity(const PLMap& f, const PLMap& g,
                                       const PLMap& h) {
    // Both x -> f(x)-x and x -> g(h(x))-h(x) are linear between consecutive
    // points of this grid.
    std::vector<Rat> grid;
    for (const auto& p : f.points()) grid.push_back(p.x);
    for (const auto& p : h.points()) grid.push_back(p.x);
    for (const auto& p : g.points()) grid.push_back(eval_inverse(h, p.x));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<Rat> checked;
    auto lhs = [&](const Rat& x) { return eval(f, x) - x; };
    auto rhs = [&](const Rat& x) { Rat hx = eval(h, x); return eval(g, hx) - hx; };

    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const Rat& a = grid[i];
        const Rat& b = grid[i + 1];
        LinearSigns u = linear_signs(a, b, lhs(a), lhs(b));
        LinearSigns v = linear_signs(a, b, rhs(a), rhs(b));
        if (u.at_lo != v.at_lo || u.at_hi != v.at_hi)
            throw InvariantError("sign identity fails on piece endpoints");
        if (u.root.has_value() != v.root.has_value() ||
            (u.root && *u.root != *v.root))
            throw InvariantError("sign identity fails at an interior crossing");
        Rat mid = midpoint(a, b);
        if (lhs(mid).sign() != rhs(mid).sign())
            throw InvariantError("sign identity fails at a piece midpoint");
        checked.push_back(a);
        checked.push_back(mid);
        if (u.root) checked.push_back(*u.root);
    }
    checked.push_back(grid.back());
    return checked;
}

Conjugator build_conjugator(const PLMap& f, const PLMap& g) {
    FixSet ff = fix_set(f);
    FixSet fg = fix_set(g);
    if (invariant_from(ff) != invariant_from(fg))
        throw DomainError("build_conjugator: sign words differ");

    // h maps the i-th fixed component of f onto the i-th of g (endpoints to
    // endpoints) and is affine on the gap closures in between.
    std::vector<Breakpoint> ctrl;
    for (std::size_t i = 0; i < ff.components.size(); ++i) {
        const auto& cf = ff.components[i];
        const auto& cg = fg.components[i];
        ctrl.push_back({cf.a, cg.a});
        if (!cf.is_point()) ctrl.push_back({cf.b, cg.b});
    }
    Conjugator out{canonicalize(PLMap(std::move(ctrl))), {}};
    out.checked_points = certify_sign_identity(f, g, out.h);
    return out;
}

ConjugacyDecision conjugate_decision(const PLMap& f, const PLMap& g) {
    ConjugacyDecision d;
    d.word_f = sign_word(f);
    d.word_g = sign_word(g);
    if (d.word_f == d.word_g) {
        d.conjugate = true;
        d.conjugator = build_conjugator(f, g);
        return d;
    }
    auto sf = full_sequence(d.word_f);
    auto sg = full_sequence(d.word_g);
    std::size_t i = 0;
    while (i < sf.size() && i < sg.size() && sf[i] == sg[i]) ++i;
    d.mismatch_index = i;
    if (i < sf.size() && i < sg.size())
        d.mismatch_what = "position " + std::to_string(i) + ": " +
                          letter_name(sf[i]) + " vs " + letter_name(sg[i]);
    else
        d.mismatch_what = "words have different lengths (" +
                          std::to_string(sf.size()) + " vs " +
                          std::to_string(sg.size()) + ")";
    return d;
}

PLMap representative(std::size_t n, Sign first_sign) {
    Rat len(1, static_cast<long>(n) + 1);
    Rat quarter = len / Rat(4);
    std::vector<Breakpoint> pts;
    Sign s = first_sign;
    for (std::size_t i = 0; i <= n; ++i) {
        Rat left = Rat(static_cast<long>(i)) * len;
        pts.push_back({left, left});
        Rat mid = left + len / Rat(2);
        Rat bump = s == Sign::Pos ? quarter : -quarter;
        pts.push_back({mid, mid + bump});
        s = flipped(s);
    }
    pts.push_back({Rat(1), Rat(1)});
    return PLMap(std::move(pts));
}

PLMap strict_minorant(const std::vector<PLMap>& family, const Rat& x0,
                      const Rat& y0) {
    if (x0 <= Rat(0) || x0 >= Rat(1) || y0 <= Rat(0) || y0 >= Rat(1))
        throw DomainError("strict_minorant: (x0, y0) must lie in (0,1)^2");
    PLMap env = min_envelope(family);
    Rat env_x0 = eval(env, x0);
    if (y0 >= env_x0)
        throw DomainError("strict_minorant: y0 must be below the envelope at x0");

    // The tent factor T with T(0) = T(x0) = y0/env(x0), T(1) = 1; the
    // minorant interpolates T*env at the envelope's breakpoints plus x0.
    Rat c = y0 / env_x0;
    auto tent_at = [&](const Rat& x) {
        if (x <= x0) return c;
        return c + (Rat(1) - c) * (x - x0) / (Rat(1) - x0);
    };
    std::vector<Rat> xs;
    for (const auto& p : env.points()) xs.push_back(p.x);
    xs.push_back(x0);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<Breakpoint> pts;
    pts.reserve(xs.size());
    for (const auto& x : xs) pts.push_back({x, tent_at(x) * eval(env, x)});
    PLMap g = canonicalize(PLMap(std::move(pts)));

    // Certify strict minorance per linear piece of (env - g).
    std::vector<Rat> grid = merged_grid(env, g);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        Rat da = eval(env, grid[i]) - eval(g, grid[i]);
        Rat db = eval(env, grid[i + 1]) - eval(g, grid[i + 1]);
        bool lo_ok = da.sign() > 0 || (da.is_zero() && grid[i] == Rat(0));
        bool hi_ok = db.sign() > 0 || (db.is_zero() && grid[i + 1] == Rat(1));
        if (!lo_ok || !hi_ok || (da.is_zero() && db.is_zero()))
            throw InvariantError("strict_minorant: strictness certification failed");
    }
    return g;
}

CrossingTranslate crossing_translate(const std::vector<PLMap>& family,
                                     std::size_t n) {
    if (family.empty()) throw DomainError("crossing_translate: empty family");
    PLMap lo_env = min_envelope(family);
    PLMap hi_env = max_envelope(family);

    if (n == 0) {
        Rat x0(1, 8);
        Rat y0 = eval(lo_env, x0) / Rat(2);
        return {strict_minorant(family, x0, y0), x0, x0};
    }

    // Two strictly increasing sequences (x_k), (y_k), k = 0..2n, with every
    // member of the family above y_k at even k and below at odd k. Each step
    // takes a quarter of the remaining room toward 1, so the points stay in
    // (0,1) no matter how flat the envelopes are.
    std::vector<Rat> xs, ys;
    xs.push_back(Rat(1, 8));
    ys.push_back(eval(lo_env, xs[0]) / Rat(2));
    for (std::size_t k = 1; k <= 2 * n; ++k) {
        if (k % 2 == 1) {
            Rat x = xs.back() + (Rat(1) - xs.back()) / Rat(4);
            Rat floor_y = max(eval(hi_env, x), ys.back());
            xs.push_back(x);
            ys.push_back(midpoint(floor_y, Rat(1)));
        } else {
            Rat lo_x = max(xs.back(), eval_inverse(lo_env, ys.back()));
            Rat x = lo_x + (Rat(1) - lo_x) / Rat(4);
            xs.push_back(x);
            ys.push_back(midpoint(ys.back(), eval(lo_env, x)));
        }
    }

    PLMap left = strict_minorant(family, xs.front(), ys.front());
    PLMap right = strict_minorant(family, xs.back(), ys.back());

    std::vector<Breakpoint> pts;
    for (const auto& p : left.points())
        if (p.x < xs.front()) pts.push_back(p);
    for (std::size_t k = 0; k <= 2 * n; ++k) pts.push_back({xs[k], ys[k]});
    for (const auto& p : right.points())
        if (p.x > xs.back()) pts.push_back(p);
    return {canonicalize(PLMap(std::move(pts))), xs.front(), xs.back()};
}

}  // namespace homeolab
