#include <doctest.h>

#include "homeolab/errors.hpp"
#include "homeolab/pl_map.hpp"
#include "homeolab/random_lab.hpp"

using namespace homeolab;

namespace {
PLMap zigzag3() {
    // Crosses the diagonal twice in the interior.
    return PLMap({{Rat(0), Rat(0)},
                  {Rat(1, 8), Rat(3, 16)},
                  {Rat(1, 2), Rat(5, 16)},
                  {Rat(7, 8), Rat(15, 16)},
                  {Rat(1), Rat(1)}});
}
}  // namespace

TEST_CASE("construction rejects invariant violations") {
    CHECK_THROWS_AS(PLMap({{Rat(1, 4), Rat(0)}, {Rat(1), Rat(1)}}), InvariantError);
    CHECK_THROWS_AS(PLMap({{Rat(0), Rat(0)}, {Rat(3, 4), Rat(1)}}), InvariantError);
    CHECK_THROWS_AS(PLMap({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(3, 4)},
                           {Rat(1, 2), Rat(7, 8)}, {Rat(1), Rat(1)}}),
                    InvariantError);
    CHECK_THROWS_AS(PLMap({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(3, 4)},
                           {Rat(3, 4), Rat(1, 2)}, {Rat(1), Rat(1)}}),
                    InvariantError);
    CHECK_THROWS_AS(PLMap({{Rat(0), Rat(1, 8)}, {Rat(1), Rat(1)}}), InvariantError);
}

TEST_CASE("eval matches the witness family") {
    // a = 1/2 makes the tent the identity.
    CHECK(eval(PLMap::tent(Rat(1, 2)), Rat(3, 10)) == Rat(3, 10));
    // f_a(1/2) = a across the parameter range.
    for (long j = 1; j < 8; ++j) {
        Rat a(j, 8);
        CHECK(eval(PLMap::tent(a), Rat(1, 2)) == a);
    }
    // Second branch of the witness family by direct substitution:
    // 2(1-a)x + 2a - 1 at a = 3/4, x = 3/4 gives 7/8.
    CHECK(eval(PLMap::tent(Rat(3, 4)), Rat(3, 4)) == Rat(7, 8));
    CHECK_THROWS_AS(eval(PLMap::identity(), Rat(-1, 2)), DomainError);
    CHECK_THROWS_AS(eval(PLMap::identity(), Rat(3, 2)), DomainError);
}

TEST_CASE("compose") {
    PLMap f = PLMap::tent(Rat(3, 4));
    CHECK(compose(f, PLMap::identity()) == canonicalize(f));
    CHECK(compose(PLMap::identity(), f) == canonicalize(f));
    CHECK(eval(compose(f, f), Rat(1, 2)) == Rat(7, 8));
    PLMap g = zigzag3();
    PLMap h = compose(f, g);
    CHECK(h.piece_count() <= f.piece_count() + g.piece_count());
    for (long j = 0; j <= 16; ++j) {
        Rat x(j, 16);
        CHECK(eval(h, x) == eval(f, eval(g, x)));
    }
}

TEST_CASE("compose respects the piece ceiling") {
    CHECK_THROWS_AS(compose(zigzag3(), zigzag3(), 3), ResourceLimitError);
}

TEST_CASE("invert") {
    CHECK(invert(PLMap::identity()) == PLMap::identity());
    PLMap f = PLMap::tent(Rat(3, 4));
    CHECK(eval(invert(f), Rat(3, 4)) == Rat(1, 2));
    CHECK(compose(invert(f), f) == PLMap::identity());
    CHECK(compose(invert(zigzag3()), zigzag3()) == PLMap::identity());
}

TEST_CASE("min envelope") {
    PLMap lo = PLMap::tent(Rat(1, 3));
    PLMap hi = PLMap::tent(Rat(2, 3));
    CHECK(min_envelope({hi}) == canonicalize(hi));
    // a -> f_a(x) is increasing for every x, so f_{1/3} is the envelope.
    CHECK(min_envelope({lo, hi}) == canonicalize(lo));
    CHECK(max_envelope({lo, hi}) == canonicalize(hi));

    // Ordered pair (no interior crossing): envelope is just the lower map.
    PLMap a({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(3, 4)}, {Rat(1), Rat(1)}});
    PLMap b({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1, 4)}, {Rat(1), Rat(1)}});
    auto [roots, seg] = crossing_count(a, b, Rat(0), Rat(1));
    CHECK(roots == 0);
    CHECK_FALSE(seg);
    CHECK(min_envelope({a, b}) == canonicalize(b));

    // Maps crossing once inside (0,1): exactly one new breakpoint.
    PLMap c({{Rat(0), Rat(0)}, {Rat(1, 4), Rat(1, 2)}, {Rat(1), Rat(1)}});
    PLMap d({{Rat(0), Rat(0)}, {Rat(3, 4), Rat(7, 8)}, {Rat(1), Rat(1)}});
    auto [roots2, seg2] = crossing_count(c, d, Rat(0), Rat(1));
    CHECK(roots2 == 1);
    CHECK_FALSE(seg2);
    PLMap env2 = min_envelope({c, d});
    std::size_t extra = 0;
    for (const auto& p : env2.points()) {
        bool in_c = false, in_d = false;
        for (const auto& q : c.points()) in_c |= (q.x == p.x);
        for (const auto& q : d.points()) in_d |= (q.x == p.x);
        if (!in_c && !in_d) ++extra;
    }
    CHECK(extra == 1);
}

TEST_CASE("inversion is exact on random maps") {
    SplitMix64 rng(808);
    for (int t = 0; t < 50; ++t) {
        PLMap f = random_interval_map(rng, 1 + rng.below(12), 14);
        CHECK(compose(invert(f), f) == PLMap::identity());
        CHECK(compose(f, invert(f)) == PLMap::identity());
        CHECK(invert(invert(f)) == f);
    }
}

TEST_CASE("canonicalize removes collinear interior points and is idempotent") {
    PLMap padded({{Rat(0), Rat(0)}, {Rat(1, 4), Rat(1, 4)}, {Rat(1, 2), Rat(1, 2)},
                  {Rat(3, 4), Rat(7, 8)}, {Rat(1), Rat(1)}});
    PLMap c = canonicalize(padded);
    CHECK(c.points().size() == 4);  // only (1/4,1/4) is collinear
    CHECK(canonicalize(c) == c);
    CHECK(PLMap::tent(Rat(1, 2)) == PLMap::identity());
}

TEST_CASE("sup distance diagnostics") {
    CHECK(sup_distance(PLMap::identity(), PLMap::identity()) == Rat(0));
    CHECK(sup_distance(PLMap::tent(Rat(3, 4)), PLMap::identity()) == Rat(1, 4));
    Rat d = symmetric_distance(PLMap::tent(Rat(3, 4)), PLMap::identity());
    CHECK(d == Rat(1, 2));
}
