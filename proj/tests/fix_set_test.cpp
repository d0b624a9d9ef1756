#include <doctest.h>

#include "homeolab/errors.hpp"
#include "homeolab/fix_set.hpp"

using namespace homeolab;

TEST_CASE("tent maps fix only the endpoints") {
    for (long j : {1L, 2L, 4L, 5L}) {
        Rat a(j, 6);  // skips a = 1/2
        FixSet fs = fix_set(PLMap::tent(a));
        REQUIRE(fs.components.size() == 2);
        CHECK(fs.components[0] == FixComponent{Rat(0), Rat(0)});
        CHECK(fs.components[1] == FixComponent{Rat(1), Rat(1)});
        REQUIRE(fs.gap_signs.size() == 1);
        CHECK(fs.gap_signs[0] == (a > Rat(1, 2) ? Sign::Pos : Sign::Neg));
    }
}

TEST_CASE("identity is one full segment") {
    FixSet fs = fix_set(PLMap::identity());
    REQUIRE(fs.components.size() == 1);
    CHECK(fs.components[0] == FixComponent{Rat(0), Rat(1)});
    CHECK(fs.gap_signs.empty());
    IntervalInvariant inv = sign_word(PLMap::identity());
    CHECK(inv.word.empty());
    CHECK(inv.flag0 == Letter::Seg);
    CHECK(inv.flag1 == Letter::Seg);
}

TEST_CASE("zigzag with two interior fixed points") {
    // Fixed points at 1/3 and 2/3, gap signs +,-,+ by construction.
    PLMap f({{Rat(0), Rat(0)}, {Rat(1, 6), Rat(1, 4)}, {Rat(1, 2), Rat(5, 12)},
             {Rat(5, 6), Rat(11, 12)}, {Rat(1), Rat(1)}});
    FixSet fs = fix_set(f);
    REQUIRE(fs.components.size() == 4);
    CHECK(fs.components[1] == FixComponent{Rat(1, 3), Rat(1, 3)});
    CHECK(fs.components[2] == FixComponent{Rat(2, 3), Rat(2, 3)});
    REQUIRE(fs.gap_signs.size() == 3);
    CHECK(fs.gap_signs[0] == Sign::Pos);
    CHECK(fs.gap_signs[1] == Sign::Neg);
    CHECK(fs.gap_signs[2] == Sign::Pos);

    // Brute-force confirmation on a 1/1000 grid.
    for (long j = 1; j < 1000; ++j) {
        Rat x(j, 1000);
        int s = (eval(f, x) - x).sign();
        if (x < Rat(1, 3)) CHECK(s == 1);
        else if (x == Rat(1, 3)) CHECK(s == 0);
        else if (x < Rat(2, 3)) CHECK(s == -1);
        else if (x == Rat(2, 3)) CHECK(s == 0);
        else CHECK(s == 1);
    }
}

TEST_CASE("segments and touching components merge") {
    // Identity on [1/4,1/2], below the diagonal before, above after.
    PLMap f({{Rat(0), Rat(0)}, {Rat(1, 4), Rat(1, 4)}, {Rat(1, 2), Rat(1, 2)},
             {Rat(3, 4), Rat(7, 8)}, {Rat(1), Rat(1)}});
    // Note: (0,0)-(1/4,1/4) is also on the diagonal, so the fixed set is
    // the single segment [0,1/2] plus the endpoint 1.
    FixSet fs = fix_set(f);
    REQUIRE(fs.components.size() == 2);
    CHECK(fs.components[0] == FixComponent{Rat(0), Rat(1, 2)});
    CHECK(fs.components[1] == FixComponent{Rat(1), Rat(1)});
    REQUIRE(fs.gap_signs.size() == 1);
    CHECK(fs.gap_signs[0] == Sign::Pos);
    IntervalInvariant inv = sign_word(f);
    CHECK(inv.flag0 == Letter::Seg);
    CHECK(inv.flag1 == Letter::Pt);
    CHECK(inv.word == std::vector<Letter>{Letter::Pos});
}

TEST_CASE("sign word of the tent family and its inverse") {
    IntervalInvariant inv = sign_word(PLMap::tent(Rat(2, 3)));
    CHECK(inv.flag0 == Letter::Pt);
    CHECK(inv.flag1 == Letter::Pt);
    CHECK(inv.word == std::vector<Letter>{Letter::Pos});
    IntervalInvariant inv_inv = sign_word(invert(PLMap::tent(Rat(2, 3))));
    CHECK(inv_inv.word == std::vector<Letter>{Letter::Neg});
    CHECK(inv_inv.flag0 == Letter::Pt);
    CHECK(inv_inv.flag1 == Letter::Pt);
}

TEST_CASE("sign_on_gap certifies per piece") {
    PLMap f = PLMap::tent(Rat(2, 3));
    CHECK(sign_on_gap(f, Rat(0), Rat(1)) == Sign::Pos);
    // A gap that actually contains a fixed point is rejected.
    PLMap g({{Rat(0), Rat(0)}, {Rat(1, 6), Rat(1, 4)}, {Rat(1, 2), Rat(5, 12)},
             {Rat(5, 6), Rat(11, 12)}, {Rat(1), Rat(1)}});
    CHECK_THROWS_AS(sign_on_gap(g, Rat(0), Rat(1)), InvariantError);
}
