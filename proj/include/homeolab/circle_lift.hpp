#pragma once

#include <utility>
#include <vector>

#include "homeolab/pl_map.hpp"

namespace homeolab {

/// PL lift of an orientation-preserving circle homeomorphism: breakpoints on
/// [0,1] with x_0 = 0, x_m = 1, both coordinates strictly increasing and
/// y_m = y_0 + 1. The map extends to all of R by F(x+1) = F(x)+1.
///
/// A lift is *normalized* when y_0 lies in [0,1); that picks one lift per
/// circle map and is required at the I/O boundary. Internal algebra (powers,
/// compositions) is free to produce other representatives; translating by an
/// integer never changes the underlying circle map.
class CircleLift {
  public:
    explicit CircleLift(std::vector<Breakpoint> points);

    /// Rigid rotation x + alpha.
    static CircleLift rotation(const Rat& alpha);
    static CircleLift identity() { return rotation(Rat(0)); }

    const std::vector<Breakpoint>& points() const { return pts_; }
    std::size_t piece_count() const { return pts_.size() - 1; }
    bool is_normalized() const;

    friend bool operator==(const CircleLift& a, const CircleLift& b) {
        return a.pts_ == b.pts_;
    }

  private:
    std::vector<Breakpoint> pts_;
};

/// Extended evaluation at any rational x, using F(x+1) = F(x)+1.
Rat eval_lift(const CircleLift& F, const Rat& x);

/// Slope/intercept of the extended map at x: F(t) = a*t + b near x
/// (right-continuous choice at breakpoints).
std::pair<Rat, Rat> lift_piece_at(const CircleLift& F, const Rat& x);

/// Subtracts floor(y_0) so that y_0 lands in [0,1).
CircleLift normalized(const CircleLift& F);

/// Adds a constant: the lift of R_c composed with the circle map of F.
CircleLift add_constant(const CircleLift& F, const Rat& c);

/// Removes collinear interior breakpoints.
CircleLift canonicalize_lift(const CircleLift& F);

/// compose(F, G)(x) = F(G(x)), exact; breakpoints are G's plus the pullbacks
/// of F's through G.
CircleLift compose(const CircleLift& F, const CircleLift& G,
                   std::size_t piece_ceiling = kDefaultPieceCeiling);

/// F^q for q >= 1 by iterated composition (exact, no renormalization).
CircleLift lift_power(const CircleLift& F, unsigned q,
                      std::size_t piece_ceiling = kDefaultPieceCeiling);

/// Inverse lift, rebased to [0,1].
CircleLift invert_lift(const CircleLift& F);

/// Builds a lift from control points on the circle: positions in [0,1),
/// strictly increasing, with values in [0,1) in the same cyclic order
/// (winding exactly once). The map is affine between consecutive controls.
CircleLift lift_from_circle_graph(const std::vector<std::pair<Rat, Rat>>& control);

}  // namespace homeolab
