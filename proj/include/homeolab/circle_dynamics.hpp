#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homeolab/circle_lift.hpp"
#include "homeolab/fix_set.hpp"

namespace homeolab {

/// Rotation number, either detected exactly (with a periodic-point witness)
/// or enclosed by the certified iteration bound |tau - (F^n(0))/n| <= 1/n.
struct RotationNumber {
    bool rational = false;
    long p = 0;  // reduced, 0 <= p < q: the circle value tau mod 1
    long q = 1;
    Rat lo;      // enclosure of tau(F) when not rational
    Rat hi;
    std::string str() const;
};

/// Exact periodic-point analysis of F^q(x) = x + t.
struct PeriodicStructure {
    unsigned q = 1;       // minimal period (orbit size)
    long translation = 0; // the integer t the solutions satisfy

    /// Degenerate case: some arc (possibly the whole circle) is pointwise
    /// periodic. `segments` lists the arcs as [a,b] with a in [0,1), b <= a+1;
    /// whole circle is the single arc [0,1].
    bool degenerate = false;
    std::vector<FixComponent> segments;

    enum class PointFlag { Attractive, Repulsive, NonCrossingAbove, NonCrossingBelow };
    std::vector<Rat> points;                        // isolated, sorted in [0,1)
    std::vector<PointFlag> flags;                   // one per point
    std::vector<std::vector<std::size_t>> orbits;   // index partition under f
    std::size_t ell = 0;                            // f(points[i]) = points[(i+ell) mod K]

    bool all_crossing() const;
};

/// Conjugacy-class label of a circle homeomorphism, as far as a bounded
/// exact search can tell.
struct CircleClass {
    enum class Kind { NonHaarNull, InfinitePeriodic, NonCrossing, Undetermined };
    Kind kind = Kind::Undetermined;
    std::optional<RotationNumber> rotation;  // set except possibly for Undetermined enclosure-only
    std::size_t orbit_pairs = 0;             // k with 2kq periodic points (NonHaarNull)
    std::size_t periodic_points = 0;         // K (NonHaarNull)
    std::optional<Rat> witness;              // non-crossing point / segment start
    std::string str() const;
    bool non_haar_null() const { return kind == Kind::NonHaarNull; }
};

/// The signature word of a lift with fixed points, read cyclically around
/// the circle: alternating component letters (PT/SEG) and gap signs.
/// Equality is equality up to cyclic rotation.
struct CyclicSignWord {
    bool whole_circle = false;      // everything fixed: single SEG letter
    std::vector<Letter> letters;    // flat [comp, gap, comp, gap, ...]
    std::string str() const;
};

bool cyclic_equal(const CyclicSignWord& a, const CyclicSignWord& b);

/// Scans q = 1..q_max for exact periodic points of F^q; on the first hit
/// returns the rational rotation number and the full structure. Otherwise
/// returns the intersected enclosure from n_iter exact iterations.
/// Throws ResourceLimitError (with the q reached) past the piece ceiling.
std::pair<RotationNumber, std::optional<PeriodicStructure>> rotation_number(
    const CircleLift& F, unsigned q_max, unsigned n_iter,
    std::size_t piece_ceiling = kDefaultPieceCeiling);

/// The enclosure path alone: [(F^n(0)-1)/n, (F^n(0)+1)/n] intersected over
/// all partial n. Sound for any lift; width <= 2/n_iter.
std::pair<Rat, Rat> rotation_enclosure(const CircleLift& F, unsigned n_iter);

/// Exact structure of the solutions of F^q(x) = x + t (t determined by the
/// lift). Throws DomainError if F^q has no periodic points.
PeriodicStructure periodic_structure(const CircleLift& F, unsigned q,
                                     std::size_t piece_ceiling = kDefaultPieceCeiling);

/// Theorem-4.2 classifier at bounded search depth.
CircleClass classify_circle(const CircleLift& F, unsigned q_max, unsigned n_iter,
                            std::size_t piece_ceiling = kDefaultPieceCeiling);

/// Signature of a lift with fixed points. Throws DomainError without them.
CyclicSignWord signature(const CircleLift& F,
                         std::size_t piece_ceiling = kDefaultPieceCeiling);

struct CircleDecision {
    enum class Verdict { Conjugate, NotConjugate, Undetermined };
    Verdict verdict = Verdict::Undetermined;
    RotationNumber rot_f, rot_g;
    std::optional<CyclicSignWord> word_f, word_g;  // words of F^q, G^q when compared
};

/// Lemma-4.1 decision: resolve both rotation numbers; if they differ the maps
/// are not conjugate; if both equal p/q, compare the signatures of the q-th
/// powers up to cyclic rotation; otherwise Undetermined.
CircleDecision conjugate_decision_circle(const CircleLift& F, const CircleLift& G,
                                         unsigned q_max,
                                         std::size_t piece_ceiling = kDefaultPieceCeiling);

/// The Claim-4.5 representative: rotation number p/q and exactly 2kq periodic
/// points, all crossing; each of the 2kq subintervals [j/n, (j+1)/n] maps onto
/// its p/q-translate by two linear pieces bulging up (j even) or down (j odd).
CircleLift representative_circle(long p, long q, long k);

/// Claim-4.6 orbit collapse: for F in the class (p/q, k+1) with k >= 1,
/// builds the PL circle map h (identity outside 2q windows) such that
/// h compose f lies in the class (p/q, k). Returns (lift of h, lift of h∘f).
std::pair<CircleLift, CircleLift> orbit_collapse(
    const CircleLift& F, const PeriodicStructure& structure,
    std::size_t piece_ceiling = kDefaultPieceCeiling);

/// The unique alpha with (R_alpha F)^n(x) = x + k: exact piecewise inversion
/// of the strictly increasing PL map alpha -> (R_alpha F)^n(x) - x.
Rat psi(const CircleLift& F, unsigned n, long k, const Rat& x);

/// Total-variation lower estimate of psi_k over a uniform grid; monotone
/// under grid refinement and bounded by 2.
Rat psi_variation(const CircleLift& F, unsigned n, long k, unsigned grid);

}  // namespace homeolab
