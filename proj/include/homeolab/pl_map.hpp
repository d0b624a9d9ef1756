#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "homeolab/rat.hpp"

namespace homeolab {

/// Default cap on breakpoint counts produced by composition/envelopes.
/// Iterated composition multiplies piece counts, and denominators with them;
/// past the ceiling we fail loudly instead of crawling.
inline constexpr std::size_t kDefaultPieceCeiling = 1'000'000;

struct Breakpoint {
    Rat x;
    Rat y;
    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Increasing piecewise-linear homeomorphism of [0,1], stored as its
/// breakpoint list. Invariants (checked at construction):
///   x_0 = 0, x_m = 1, both coordinates strictly increasing, m >= 1,
/// and for an interval homeomorphism additionally y_0 = 0, y_m = 1.
/// Evaluation is exact linear interpolation. Values are immutable.
class PLMap {
  public:
    /// `require_interval` additionally enforces y_0 = 0, y_m = 1.
    explicit PLMap(std::vector<Breakpoint> points, bool require_interval = true);

    static PLMap identity();

    /// The witness family of tent maps: breakpoints (0,0), (1/2,a), (1,1),
    /// an interval homeomorphism for a in (0,1).
    static PLMap tent(const Rat& a);

    const std::vector<Breakpoint>& points() const { return pts_; }
    std::size_t piece_count() const { return pts_.size() - 1; }
    bool is_interval_map() const;
    bool is_identity() const;

    friend bool operator==(const PLMap& a, const PLMap& b) { return a.pts_ == b.pts_; }

  private:
    std::vector<Breakpoint> pts_;
};

/// Exact interpolation; throws DomainError for x outside [0,1].
Rat eval(const PLMap& f, const Rat& x);

/// Inverse evaluation f^{-1}(y); throws DomainError for y outside [f(0), f(1)].
Rat eval_inverse(const PLMap& f, const Rat& y);

/// Slope/intercept of the piece of f at x, so f(t) = a*t + b near x.
/// At a breakpoint the piece to the right is chosen (to the left at x = 1).
std::pair<Rat, Rat> piece_at(const PLMap& f, const Rat& x);

/// Removes interior breakpoints that are collinear with their neighbours.
/// Canonical forms are what equality and hashing of maps mean.
PLMap canonicalize(const PLMap& f);

/// compose(f, g)(x) = f(g(x)). Result breakpoints: {x_j^g} union {g^{-1}(x_i^f)}.
PLMap compose(const PLMap& f, const PLMap& g,
              std::size_t piece_ceiling = kDefaultPieceCeiling);

/// Breakpoints swapped, (x,y) -> (y,x).
PLMap invert(const PLMap& f);

/// Exact pointwise minimum of a nonempty family of interval maps; breakpoints
/// are inserted at every crossing abscissa, so the result interpolates the
/// true lower envelope.
PLMap min_envelope(const std::vector<PLMap>& family,
                   std::size_t piece_ceiling = kDefaultPieceCeiling);

/// Exact pointwise maximum, same contract as min_envelope.
PLMap max_envelope(const std::vector<PLMap>& family,
                   std::size_t piece_ceiling = kDefaultPieceCeiling);

/// sup_{x in [0,1]} |f(x) - g(x)|, attained on the merged breakpoint grid.
/// Diagnostic only: no decision procedure in this library consumes it.
Rat sup_distance(const PLMap& f, const PLMap& g);

/// The metric d'(f,g) = ||f-g|| + ||f^{-1}-g^{-1}||. Diagnostic only.
Rat symmetric_distance(const PLMap& f, const PLMap& g);

/// Merged strictly-increasing abscissa grid of two maps.
std::vector<Rat> merged_grid(const PLMap& f, const PLMap& g);

/// Exact count of solutions of f(x) = g(x) in the open interval (lo, hi).
/// Returns {isolated solution count, true if some subinterval has f == g}.
std::pair<std::size_t, bool> crossing_count(const PLMap& f, const PLMap& g,
                                            const Rat& lo, const Rat& hi);

}  // namespace homeolab
