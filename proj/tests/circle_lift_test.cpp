#include <doctest.h>

#include "homeolab/circle_lift.hpp"
#include "homeolab/errors.hpp"
#include "homeolab/random_lab.hpp"

using namespace homeolab;

TEST_CASE("lift invariants") {
    CHECK_THROWS_AS(CircleLift({{Rat(0), Rat(0)}, {Rat(1), Rat(3, 2)}}), InvariantError);
    CHECK_THROWS_AS(CircleLift({{Rat(0), Rat(1, 2)}, {Rat(3, 4), Rat(3, 2)}}),
                    InvariantError);
    CircleLift r = CircleLift::rotation(Rat(2, 5));
    CHECK(r.is_normalized());
    CHECK_FALSE(CircleLift::rotation(Rat(7, 5)).is_normalized());
    CHECK(normalized(CircleLift::rotation(Rat(7, 5))) == CircleLift::rotation(Rat(2, 5)));
}

TEST_CASE("extended evaluation obeys F(x+1) = F(x)+1") {
    SplitMix64 rng(3);
    CircleLift F = random_lift(rng, 6, 12);
    for (int i = 0; i < 50; ++i) {
        Rat x = dyadic(rng.bits(12), 12) + Rat(static_cast<long>(rng.below(7)) - 3);
        CHECK(eval_lift(F, x + Rat(1)) == eval_lift(F, x) + Rat(1));
        auto [a, b] = lift_piece_at(F, x);
        CHECK(a * x + b == eval_lift(F, x));
    }
}

TEST_CASE("composition matches pointwise evaluation") {
    SplitMix64 rng(11);
    CircleLift F = random_lift(rng, 5, 10);
    CircleLift G = random_lift(rng, 4, 10);
    CircleLift FG = compose(F, G);
    for (int i = 0; i < 200; ++i) {
        Rat x = dyadic(rng.bits(14), 14);
        CHECK(eval_lift(FG, x) == eval_lift(F, eval_lift(G, x)));
    }
    CircleLift F3 = lift_power(F, 3);
    for (int i = 0; i < 50; ++i) {
        Rat x = dyadic(rng.bits(14), 14);
        CHECK(eval_lift(F3, x) == eval_lift(F, eval_lift(F, eval_lift(F, x))));
    }
}

TEST_CASE("rotation algebra") {
    CircleLift r13 = CircleLift::rotation(Rat(1, 3));
    CircleLift r12 = CircleLift::rotation(Rat(1, 2));
    CHECK(compose(r13, r12) == CircleLift::rotation(Rat(5, 6)));
    CHECK(lift_power(r13, 3) == CircleLift::rotation(Rat(1)));
    CHECK(add_constant(r13, Rat(1, 6)) == CircleLift::rotation(Rat(1, 2)));
}

TEST_CASE("inverse lift") {
    // The true functional inverse (not renormalized): x - 1/3.
    CHECK(invert_lift(CircleLift::rotation(Rat(1, 3))) ==
          CircleLift::rotation(Rat(-1, 3)));
    SplitMix64 rng(17);
    for (int t = 0; t < 20; ++t) {
        CircleLift F = random_lift(rng, 3 + rng.below(4), 10);
        CircleLift Finv = invert_lift(F);
        for (int i = 0; i < 20; ++i) {
            Rat x = dyadic(rng.bits(12), 12);
            CHECK(eval_lift(Finv, eval_lift(F, x)) == x);
        }
    }
}

TEST_CASE("lift from circle control points") {
    // A single control point pins a rotation.
    CircleLift r = lift_from_circle_graph({{Rat(1, 4), Rat(3, 4)}});
    CHECK(r == CircleLift::rotation(Rat(1, 2)));

    // Wrapping window: values cross 0 between the controls.
    CircleLift h = lift_from_circle_graph(
        {{Rat(1, 10), Rat(1, 10)}, {Rat(9, 10), Rat(9, 10)}, {Rat(19, 20), Rat(1, 20)}});
    CHECK(h.is_normalized());
    CHECK(eval_lift(h, Rat(1, 10)) == Rat(1, 10));
    CHECK(eval_lift(h, Rat(9, 10)) == Rat(9, 10));
    CHECK(eval_lift(h, Rat(19, 20)) == Rat(21, 20));

    CHECK_THROWS_AS(lift_from_circle_graph({{Rat(1, 2), Rat(1, 4)},
                                            {Rat(1, 4), Rat(1, 2)}}),
                    InvariantError);
}
