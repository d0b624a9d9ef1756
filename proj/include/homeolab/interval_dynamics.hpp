#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homeolab/fix_set.hpp"
#include "homeolab/pl_map.hpp"

namespace homeolab {

/// Conjugacy-class label of a PL interval homeomorphism.
///
/// The NonHaarNull labels are exactly the classes a finite PL map can
/// realize from the non-Haar-null family: finitely many interior fixed
/// points, all crossing, with strictly alternating gap signs. The classes
/// whose fixed sets accumulate at 0 and/or 1 exist only for non-PL maps and
/// are therefore never values of this type; they appear in reports only as
/// the symbolic labels "accumulating-at-0/1/both".
struct IntervalClass {
    enum class Kind { NonHaarNull, InteriorSegment, NonCrossingPoint };
    Kind kind = Kind::NonHaarNull;

    // NonHaarNull payload.
    std::size_t interior_fixed_points = 0;
    Sign first_sign = Sign::Pos;

    // HaarNull witness: the offending segment, or the non-crossing point
    // (stored as a = b).
    std::optional<FixComponent> witness;

    bool non_haar_null() const { return kind == Kind::NonHaarNull; }
    std::string str() const;
    friend bool operator==(const IntervalClass& x, const IntervalClass& y) {
        if (x.kind != y.kind) return false;
        if (x.kind != Kind::NonHaarNull) return true;  // witness is evidence, not identity
        return x.interior_fixed_points == y.interior_fixed_points &&
               x.first_sign == y.first_sign;
    }
};

/// Certified conjugator: h together with the exact sign-agreement
/// checkpoints at which sign(f(x)-x) = sign(g(h(x))-h(x)) was verified.
struct Conjugator {
    PLMap h;
    std::vector<Rat> checked_points;
};

struct ConjugacyDecision {
    bool conjugate = false;
    IntervalInvariant word_f;
    IntervalInvariant word_g;
    std::optional<Conjugator> conjugator;           // set when conjugate
    std::optional<std::size_t> mismatch_index;      // first word discrepancy
    std::optional<std::string> mismatch_what;       // human-readable mismatch
};

/// Theorem-3.3 classifier (PL case): InteriorSegment if some fixed segment
/// meets (0,1); NonCrossingPoint if some interior isolated fixed point has
/// equal signs on its two neighbouring gaps (a local extremum of f - id);
/// otherwise NonHaarNull{n, first_sign}.
IntervalClass classify(const PLMap& f);

/// Lemma-3.2 decision: conjugate iff the sign words match; a certified
/// conjugator is constructed in the positive case, and the first word
/// discrepancy is reported in the negative one.
ConjugacyDecision conjugate_decision(const PLMap& f, const PLMap& g);

/// Constructs the canonical PL conjugator for two maps with equal sign
/// words: it maps the i-th fixed component of f onto the i-th of g and is
/// affine on gap closures. Throws DomainError if the words differ.
/// The Lemma-3.2 identity is certified exactly per linear piece.
Conjugator build_conjugator(const PLMap& f, const PLMap& g);

/// Exact certification of sign(f(x)-x) = sign(g(h(x))-h(x)) for all x.
/// Returns the checkpoints; throws InvariantError if any piece disagrees.
std::vector<Rat> certify_sign_identity(const PLMap& f, const PLMap& g, const PLMap& h);

/// Canonical zigzag representative: interior fixed points at i/(n+1) and
/// strictly alternating gap signs starting with `first_sign` next to 0.
PLMap representative(std::size_t n, Sign first_sign);

/// A map g whose graph crosses every member of the family at least 2n times
/// inside a window (x_0, x_{2n}) and not at all in (0, x_0) or (x_{2n}, 1):
/// the finite translate from the F'_{>= n} argument. Returns g and the window.
struct CrossingTranslate {
    PLMap g;
    Rat window_lo;
    Rat window_hi;
};
CrossingTranslate crossing_translate(const std::vector<PLMap>& family, std::size_t n);

/// Lemma-3.7 strict minorant: g with g(x0) = y0 and g < min_envelope(family)
/// on (0,1), built by PL interpolation of the tent-scaled envelope.
/// Pre: 0 < x0, y0 < 1 and y0 < min_envelope(family)(x0); strictness is
/// certified per linear piece.
PLMap strict_minorant(const std::vector<PLMap>& family, const Rat& x0, const Rat& y0);

}  // namespace homeolab
