#include "homeolab/circle_dynamics.hpp"

#include <algorithm>
#include <numeric>

#include "homeolab/errors.hpp"

namespace homeolab {

namespace {

const Rat kZero(0);
const Rat kOne(1);

long to_long(const mpz_class& z) {
    if (!z.fits_slong_p()) throw ResourceLimitError("integer out of long range");
    return z.get_si();
}

}  // namespace

std::string RotationNumber::str() const {
    if (rational) return std::to_string(p) + "/" + std::to_string(q);
    return "[" + lo.str() + ", " + hi.str() + "]";
}

bool PeriodicStructure::all_crossing() const {
    if (degenerate) return false;
    for (auto f : flags)
        if (f != PointFlag::Attractive && f != PointFlag::Repulsive) return false;
    return true;
}

std::string CircleClass::str() const {
    switch (kind) {
        case Kind::NonHaarNull:
            return "non-haar-null(" + (rotation ? rotation->str() : "?") +
                   ", k=" + std::to_string(orbit_pairs) + ")";
        case Kind::InfinitePeriodic: return "haar-null(infinite-periodic)";
        case Kind::NonCrossing: return "haar-null(non-crossing)";
        case Kind::Undetermined: return "undetermined";
    }
    return "?";
}

std::string CyclicSignWord::str() const {
    std::string s;
    for (const auto& l : letters) s += letter_name(l) + " ";
    if (!s.empty()) s.pop_back();
    return s;
}

bool cyclic_equal(const CyclicSignWord& a, const CyclicSignWord& b) {
    if (a.whole_circle != b.whole_circle) return false;
    if (a.letters.size() != b.letters.size()) return false;
    if (a.whole_circle) return a.letters == b.letters;
    // Doubling trick; rotations must preserve letter parity (component/gap),
    // so only even offsets are admissible.
    std::size_t n = a.letters.size();
    for (std::size_t off = 0; off < n; off += 2) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            ok = a.letters[(off + i) % n] == b.letters[i];
        if (ok) return true;
    }
    return false;
}

namespace {

// All solutions of G(x) = x + t, x in [0,1), for every feasible integer t.
// For a circle lift at most one t can have solutions.
struct PeriodicSolutions {
    long translation = 0;
    std::vector<Rat> points;              // isolated solutions in [0,1)
    std::vector<FixComponent> segments;   // maximal solution arcs in [0,1]
    bool any() const { return !points.empty() || !segments.empty(); }
};

PeriodicSolutions solve_displacement(const CircleLift& G) {
    const auto& pts = G.points();
    // d(x) = G(x) - x is PL with extrema on the breakpoint grid.
    Rat dmin = pts.front().y - pts.front().x;
    Rat dmax = dmin;
    for (const auto& p : pts) {
        Rat d = p.y - p.x;
        if (d < dmin) dmin = d;
        if (d > dmax) dmax = d;
    }
    PeriodicSolutions found;
    bool have = false;
    for (mpz_class t = dmin.floor() + (dmin.frac().is_zero() ? 0 : 1);
         Rat(t, 1) <= dmax; ++t) {
        PeriodicSolutions sol;
        sol.translation = to_long(t);
        Rat rt(t, 1);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            Rat d_lo = pts[i].y - pts[i].x - rt;
            Rat d_hi = pts[i + 1].y - pts[i + 1].x - rt;
            if (d_lo.is_zero() && d_hi.is_zero()) {
                sol.segments.push_back({pts[i].x, pts[i + 1].x});
                continue;
            }
            if (d_lo.is_zero()) sol.points.push_back(pts[i].x);
            if (d_hi.is_zero() && pts[i + 1].x < kOne) sol.points.push_back(pts[i + 1].x);
            if (d_lo.sign() * d_hi.sign() < 0)
                sol.points.push_back(pts[i].x +
                                     (pts[i + 1].x - pts[i].x) * d_lo / (d_lo - d_hi));
        }
        if (!sol.any()) continue;
        if (have)
            throw InvariantError("periodic solve: two distinct translations fired");
        // Tidy: sort/dedup points, merge touching segments, drop points
        // swallowed by segments.
        std::sort(sol.points.begin(), sol.points.end());
        sol.points.erase(std::unique(sol.points.begin(), sol.points.end()),
                         sol.points.end());
        std::vector<FixComponent> merged;
        for (const auto& s : sol.segments) {
            if (!merged.empty() && s.a <= merged.back().b) {
                if (s.b > merged.back().b) merged.back().b = s.b;
            } else {
                merged.push_back(s);
            }
        }
        sol.segments = std::move(merged);
        std::vector<Rat> keep;
        for (const auto& x : sol.points) {
            bool inside = false;
            for (const auto& s : sol.segments)
                inside |= (x >= s.a && x <= s.b);
            if (!inside) keep.push_back(x);
        }
        sol.points = std::move(keep);
        found = std::move(sol);
        have = true;
    }
    return have ? found : PeriodicSolutions{};
}

// Certified constant sign of G(x) - x - t on the open arc (lo, hi),
// hi <= lo + 1, using the periodicity of the displacement.
Sign circle_gap_sign(const CircleLift& G, long t, const Rat& lo, const Rat& hi) {
    if (lo >= hi) throw DomainError("circle_gap_sign: empty arc");
    Rat rt(t);
    std::vector<Rat> grid;
    grid.push_back(lo);
    // Breakpoints of the extended lift inside (lo, hi).
    for (std::size_t i = 0; i + 1 < G.points().size(); ++i) {
        const Rat& a = G.points()[i].x;
        mpz_class k0 = (lo - a).floor();
        for (mpz_class k = k0; ; ++k) {
            Rat shifted = a + Rat(k, 1);
            if (shifted <= lo) continue;
            if (shifted >= hi) break;
            grid.push_back(shifted);
        }
    }
    grid.push_back(hi);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    int expected = 0;
    auto check = [&](const Rat& x) {
        int s = (eval_lift(G, x) - x - rt).sign();
        if (s == 0) throw InvariantError("circle_gap_sign: root inside gap");
        if (expected == 0) expected = s;
        if (s != expected) throw InvariantError("circle_gap_sign: sign flip inside gap");
    };
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (i > 0) check(grid[i]);
        check(midpoint(grid[i], grid[i + 1]));
    }
    return expected > 0 ? Sign::Pos : Sign::Neg;
}

PeriodicStructure structure_from_solutions(const CircleLift& F, const CircleLift& G,
                                           unsigned q, const PeriodicSolutions& sol) {
    PeriodicStructure st;
    st.q = q;
    st.translation = sol.translation;

    if (!sol.segments.empty()) {
        st.degenerate = true;
        st.segments = sol.segments;
        // Merge a wrap-around arc: last ending at 1 joins first starting at 0,
        // unless the whole circle is one arc.
        if (st.segments.size() >= 2 && st.segments.front().a == kZero &&
            st.segments.back().b == kOne) {
            FixComponent last = st.segments.back();
            st.segments.pop_back();
            st.segments.front().a = last.a - kOne;
        }
        for (const auto& x : sol.points) st.points.push_back(x);
        return st;
    }

    st.points = sol.points;
    const std::size_t K = st.points.size();
    if (K == 0) throw DomainError("no periodic points at this q");

    // Crossing flags from the certified signs of the two neighbouring gaps.
    std::vector<Sign> gap_sign(K);  // gap i lies between points[i] and points[i+1]
    for (std::size_t i = 0; i < K; ++i) {
        Rat lo = st.points[i];
        Rat hi = (i + 1 < K) ? st.points[i + 1] : st.points[0] + kOne;
        gap_sign[i] = circle_gap_sign(G, st.translation, lo, hi);
    }
    for (std::size_t i = 0; i < K; ++i) {
        Sign left = gap_sign[(i + K - 1) % K];
        Sign right = gap_sign[i];
        if (left == Sign::Pos && right == Sign::Neg)
            st.flags.push_back(PeriodicStructure::PointFlag::Attractive);
        else if (left == Sign::Neg && right == Sign::Pos)
            st.flags.push_back(PeriodicStructure::PointFlag::Repulsive);
        else if (left == Sign::Pos)
            st.flags.push_back(PeriodicStructure::PointFlag::NonCrossingAbove);
        else
            st.flags.push_back(PeriodicStructure::PointFlag::NonCrossingBelow);
    }

    // Orbit step: f maps the periodic set onto itself monotonically.
    auto index_of = [&](const Rat& v) {
        auto it = std::lower_bound(st.points.begin(), st.points.end(), v);
        if (it == st.points.end() || *it != v)
            throw InvariantError("periodic point image is not a periodic point");
        return static_cast<std::size_t>(it - st.points.begin());
    };
    st.ell = index_of(eval_lift(F, st.points[0]).frac());
    for (std::size_t i = 1; i < K; ++i) {
        if (index_of(eval_lift(F, st.points[i]).frac()) != (i + st.ell) % K)
            throw InvariantError("periodic orbit step is not uniform");
    }

    // Orbits are the cycles of i -> i + ell (mod K); all have equal size.
    std::vector<bool> seen(K, false);
    for (std::size_t i = 0; i < K; ++i) {
        if (seen[i]) continue;
        std::vector<std::size_t> orbit;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            orbit.push_back(j);
            j = (j + st.ell) % K;
        }
        st.orbits.push_back(std::move(orbit));
    }
    st.q = static_cast<unsigned>(st.orbits.front().size());
    for (const auto& o : st.orbits)
        if (o.size() != st.q)
            throw InvariantError("periodic orbits have unequal sizes");
    return st;
}

}  // namespace

std::pair<Rat, Rat> rotation_enclosure(const CircleLift& F, unsigned n_iter) {
    if (n_iter == 0) throw DomainError("rotation_enclosure: n_iter must be >= 1");
    Rat lo, hi;
    bool first = true;
    Rat x(0);
    for (unsigned n = 1; n <= n_iter; ++n) {
        x = eval_lift(F, x);
        Rat nn(static_cast<long>(n));
        Rat cand_lo = (x - kOne) / nn;
        Rat cand_hi = (x + kOne) / nn;
        if (first) {
            lo = cand_lo;
            hi = cand_hi;
            first = false;
        } else {
            lo = max(lo, cand_lo);
            hi = min(hi, cand_hi);
        }
    }
    if (lo > hi) throw InvariantError("rotation enclosure became empty");
    return {lo, hi};
}

std::pair<RotationNumber, std::optional<PeriodicStructure>> rotation_number(
    const CircleLift& F, unsigned q_max, unsigned n_iter, std::size_t piece_ceiling) {
    if (q_max == 0 || n_iter == 0)
        throw DomainError("rotation_number: q_max and n_iter must be >= 1");
    CircleLift G = F;
    for (unsigned q = 1; q <= q_max; ++q) {
        if (q > 1) {
            try {
                G = compose(G, F, piece_ceiling);
            } catch (const ResourceLimitError& e) {
                throw ResourceLimitError(std::string("rotation_number: ") + e.what(),
                                         static_cast<int>(q));
            }
        }
        PeriodicSolutions sol = solve_displacement(G);
        if (!sol.any()) continue;

        PeriodicStructure st = structure_from_solutions(F, G, q, sol);
        RotationNumber rn;
        rn.rational = true;
        long t = sol.translation;
        long qc = static_cast<long>(q);
        long pc = ((t % qc) + qc) % qc;
        // First-hit q is the minimal period, which forces gcd(p, q) = 1
        // (gcd(0, 1) = 1 covers fixed points).
        if (std::gcd(pc, qc) != 1)
            throw InvariantError("rotation_number: reducible first hit");
        rn.p = pc;
        rn.q = qc;
        return {rn, st};
    }
    RotationNumber rn;
    rn.rational = false;
    auto [lo, hi] = rotation_enclosure(F, n_iter);
    rn.lo = lo;
    rn.hi = hi;
    return {rn, std::nullopt};
}

PeriodicStructure periodic_structure(const CircleLift& F, unsigned q,
                                     std::size_t piece_ceiling) {
    if (q == 0) throw DomainError("periodic_structure: q must be >= 1");
    CircleLift G = lift_power(F, q, piece_ceiling);
    PeriodicSolutions sol = solve_displacement(G);
    if (!sol.any()) throw DomainError("no periodic points at this q");
    return structure_from_solutions(F, G, q, sol);
}

CircleClass classify_circle(const CircleLift& F, unsigned q_max, unsigned n_iter,
                            std::size_t piece_ceiling) {
    auto [rn, st] = rotation_number(F, q_max, n_iter, piece_ceiling);
    CircleClass out;
    out.rotation = rn;
    if (!rn.rational) {
        out.kind = CircleClass::Kind::Undetermined;
        return out;
    }
    if (st->degenerate) {
        out.kind = CircleClass::Kind::InfinitePeriodic;
        out.witness = st->segments.front().a.frac();
        return out;
    }
    for (std::size_t i = 0; i < st->flags.size(); ++i) {
        if (st->flags[i] != PeriodicStructure::PointFlag::Attractive &&
            st->flags[i] != PeriodicStructure::PointFlag::Repulsive) {
            out.kind = CircleClass::Kind::NonCrossing;
            out.witness = st->points[i];
            return out;
        }
    }
    const std::size_t K = st->points.size();
    if (K % (2 * st->q) != 0)
        throw InvariantError("classify_circle: odd orbit pair count");
    out.kind = CircleClass::Kind::NonHaarNull;
    out.orbit_pairs = K / (2 * st->q);
    out.periodic_points = K;
    return out;
}

CyclicSignWord signature(const CircleLift& F, std::size_t piece_ceiling) {
    (void)piece_ceiling;
    PeriodicSolutions sol = solve_displacement(F);
    if (!sol.any()) throw DomainError("signature: the map has no fixed points");

    CyclicSignWord w;
    // Assemble circular components from points and arcs, merging across 0 ~ 1.
    struct Comp { Rat a, b; };
    std::vector<Comp> comps;
    for (const auto& p : sol.points) comps.push_back({p, p});
    for (const auto& s : sol.segments) comps.push_back({s.a, s.b});
    std::sort(comps.begin(), comps.end(),
              [](const Comp& u, const Comp& v) { return u.a < v.a; });
    if (comps.size() == 1 && comps[0].a == kZero && comps[0].b == kOne) {
        w.whole_circle = true;
        w.letters = {Letter::Seg};
        return w;
    }
    if (comps.size() >= 2 && comps.front().a == kZero && comps.back().b == kOne) {
        Comp last = comps.back();
        comps.pop_back();
        comps.front().a = last.a - kOne;  // wrap through 0
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const Comp& c = comps[i];
        w.letters.push_back(c.a == c.b ? Letter::Pt : Letter::Seg);
        Rat gap_lo = c.b;
        Rat gap_hi = (i + 1 < comps.size()) ? comps[i + 1].a : comps[0].a + kOne;
        w.letters.push_back(
            to_letter(circle_gap_sign(F, sol.translation, gap_lo, gap_hi)));
    }
    return w;
}

CircleDecision conjugate_decision_circle(const CircleLift& F, const CircleLift& G,
                                         unsigned q_max, std::size_t piece_ceiling) {
    CircleDecision d;
    // The enclosure depth only matters for reporting Undetermined inputs.
    const unsigned n_iter = 64;
    auto [rf, sf] = rotation_number(F, q_max, n_iter, piece_ceiling);
    auto [rg, sg] = rotation_number(G, q_max, n_iter, piece_ceiling);
    d.rot_f = rf;
    d.rot_g = rg;
    if (!rf.rational || !rg.rational) {
        d.verdict = CircleDecision::Verdict::Undetermined;
        return d;
    }
    if (rf.p != rg.p || rf.q != rg.q) {
        d.verdict = CircleDecision::Verdict::NotConjugate;
        return d;
    }
    unsigned q = static_cast<unsigned>(rf.q);
    CircleLift Fq = lift_power(F, q, piece_ceiling);
    CircleLift Gq = lift_power(G, q, piece_ceiling);
    d.word_f = signature(Fq, piece_ceiling);
    d.word_g = signature(Gq, piece_ceiling);
    d.verdict = cyclic_equal(*d.word_f, *d.word_g)
                    ? CircleDecision::Verdict::Conjugate
                    : CircleDecision::Verdict::NotConjugate;
    return d;
}

CircleLift representative_circle(long p, long q, long k) {
    if (q < 1 || k < 1 || p < 0 || p >= q || std::gcd(p, q) != 1)
        throw DomainError("representative_circle: need gcd(p,q)=1, 0 <= p < q, k >= 1");
    long n = 2 * k * q;
    Rat shift(p, q);
    Rat quarter(1, 4 * n);
    std::vector<Breakpoint> pts;
    for (long j = 0; j < n; ++j) {
        Rat left(j, n);
        pts.push_back({left, left + shift});
        Rat mid(2 * j + 1, 2 * n);
        Rat bump = (j % 2 == 0) ? quarter : -quarter;
        pts.push_back({mid, mid + shift + bump});
    }
    pts.push_back({kOne, kOne + shift});
    return CircleLift(std::move(pts));
}

std::pair<CircleLift, CircleLift> orbit_collapse(const CircleLift& F,
                                                 const PeriodicStructure& st,
                                                 std::size_t piece_ceiling) {
    if (st.degenerate || !st.all_crossing())
        throw DomainError("orbit_collapse: structure must be finite and all-crossing");
    const std::size_t K = st.points.size();
    const std::size_t q = st.q;
    if (K % (2 * q) != 0 || K / (2 * q) < 2)
        throw DomainError("orbit_collapse: need at least two orbit pairs");

    // The paper's F+ case: relabel so that the point with label 0 is
    // repulsive; crossing flags alternate, so a shift by one suffices.
    std::size_t r = 0;
    if (st.flags[0] != PeriodicStructure::PointFlag::Repulsive) r = 1;
    if (st.flags[r] != PeriodicStructure::PointFlag::Repulsive)
        throw InvariantError("orbit_collapse: no repulsive point among the first two");
    auto pt = [&](std::size_t j) {
        // Label j (after relabeling), unwrapped to an increasing real sequence.
        std::size_t base = (j + r) % K;
        mpz_class wraps((j + r) / K);
        return st.points[base] + Rat(wraps, 1);
    };

    // Minimal cyclic gap sets the safety margin around each periodic point.
    Rat min_gap = st.points[0] + kOne - st.points[K - 1];
    for (std::size_t i = 0; i + 1 < K; ++i)
        min_gap = min(min_gap, st.points[i + 1] - st.points[i]);
    Rat margin = min_gap / Rat(4);

    // Window i kills the points with labels i*ell + 1 and i*ell + 2: h maps
    // [x_i, y_i] onto [x_i, u_i] and [y_i, v_i] onto [u_i, v_i] linearly and
    // is the identity elsewhere.
    std::vector<std::pair<Rat, Rat>> control;
    for (std::size_t i = 0; i < q; ++i) {
        std::size_t base_label = (i * st.ell) % K;
        Rat s0 = pt(base_label) + margin;        // right of p_{i ell}
        Rat r1 = pt(base_label + 1) - margin;    // left of p_{i ell + 1}
        Rat s2 = pt(base_label + 2) + margin;    // right of p_{i ell + 2}
        Rat r3 = pt(base_label + 3) - margin;    // left of p_{i ell + 3}
        Rat xi = s0 + (r1 - s0) / Rat(4);
        Rat yi = midpoint(s0, r1);
        Rat ui = s2 + (r3 - s2) / Rat(4);
        Rat vi = midpoint(s2, r3);
        if (!(xi < yi && yi < ui && ui < vi))
            throw InvariantError("orbit_collapse: window selection failed at gap " +
                                 std::to_string(i));
        control.push_back({xi.frac(), xi.frac()});
        control.push_back({yi.frac(), ui.frac()});
        control.push_back({vi.frac(), vi.frac()});
    }
    std::sort(control.begin(), control.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    CircleLift h = lift_from_circle_graph(control);
    CircleLift collapsed = normalized(compose(h, F, piece_ceiling));
    return {h, collapsed};
}

namespace {

// (R_alpha F)^n(x) - x, computed exactly by iteration.
Rat displaced_iterate(const CircleLift& F, unsigned n, const Rat& alpha, const Rat& x) {
    Rat y = x;
    for (unsigned i = 0; i < n; ++i) y = eval_lift(F, y) + alpha;
    return y - x;
}

}  // namespace

Rat psi(const CircleLift& F, unsigned n, long k, const Rat& x) {
    if (n == 0) throw DomainError("psi: n must be >= 1");
    const CircleLift& Fn = F;
    Rat target(k);

    // Containment window for a normalized lift, shifted by floor(y_0) for
    // any other representative, padded; widen by integers if ever needed
    // (phi(alpha + 1) = phi(alpha) + n).
    Rat base_shift(F.points().front().y.floor(), 1);
    Rat lo = Rat(k, static_cast<long>(n)) - base_shift - Rat(2) -
             Rat(1, static_cast<long>(n));
    Rat hi = Rat(k, static_cast<long>(n)) - base_shift + Rat(2) +
             Rat(1, static_cast<long>(n));
    while (displaced_iterate(Fn, n, lo, x) > target) lo -= kOne;
    while (displaced_iterate(Fn, n, hi, x) < target) hi += kOne;

    // phi is PL and strictly increasing in alpha. Newton steps on the local
    // linearization find the root exactly once the bracket midpoint shares
    // the root's itinerary; bisection keeps the bracket shrinking until then.
    for (int guard = 0; guard < 4096; ++guard) {
        Rat mid = midpoint(lo, hi);
        // Linearize phi around mid: y_j = A + B*alpha along mid's itinerary.
        Rat A = x, B = Rat(0), y = x;
        for (unsigned j = 0; j < n; ++j) {
            auto [slope, intercept] = lift_piece_at(Fn, y);
            A = slope * A + intercept;
            B = slope * B + kOne;
            y = eval_lift(Fn, y) + mid;
        }
        Rat phi_mid = y - x;
        if (phi_mid == target) return mid;
        if (phi_mid < target) lo = mid; else hi = mid;

        Rat cand = (target + x - A) / B;
        if (cand > lo && cand < hi) {
            Rat phi_cand = displaced_iterate(Fn, n, cand, x);
            if (phi_cand == target) return cand;
            if (phi_cand < target) lo = cand; else hi = cand;
        }
    }
    throw InvariantError("psi: root isolation failed to terminate");
}

Rat psi_variation(const CircleLift& F, unsigned n, long k, unsigned grid) {
    if (grid < 2) throw DomainError("psi_variation: grid must be >= 2");
    Rat total(0);
    Rat prev = psi(F, n, k, Rat(0));
    for (unsigned j = 1; j <= grid; ++j) {
        Rat t(static_cast<long>(j), static_cast<long>(grid));
        Rat cur = psi(F, n, k, t);
        total += (cur - prev).abs();
        prev = cur;
    }
    return total;
}

}  // namespace homeolab
