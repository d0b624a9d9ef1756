#pragma once

#include <string>
#include <vector>

#include "homeolab/pl_map.hpp"

namespace homeolab {

enum class Sign { Neg = -1, Pos = 1 };

inline Sign flipped(Sign s) { return s == Sign::Pos ? Sign::Neg : Sign::Pos; }
inline char sign_char(Sign s) { return s == Sign::Pos ? '+' : '-'; }

/// Letters of the conjugacy word: gap signs and component types.
enum class Letter { Pos, Neg, Pt, Seg };

Letter to_letter(Sign s);
std::string letter_name(Letter l);

/// One maximal connected component of fix(f) = {x : f(x) = x}:
/// either an isolated point (a == b) or a segment (a < b).
struct FixComponent {
    Rat a;
    Rat b;
    bool is_point() const { return a == b; }
    friend bool operator==(const FixComponent&, const FixComponent&) = default;
};

/// fix(f) split into ordered disjoint components, plus the constant sign of
/// f - id on each maximal open gap between consecutive components.
/// For an interval homeomorphism 0 and 1 always lie in components, so
/// gap_signs.size() == components.size() - 1.
struct FixSet {
    std::vector<FixComponent> components;
    std::vector<Sign> gap_signs;
};

/// The complete conjugacy invariant for PL interval homeomorphisms:
/// the alternating word of gap signs and interior component types, plus the
/// types of the components containing 0 and 1. Two maps are conjugate in
/// Homeo+([0,1]) exactly when these are equal.
struct IntervalInvariant {
    std::vector<Letter> word;
    Letter flag0 = Letter::Pt;
    Letter flag1 = Letter::Pt;
    friend bool operator==(const IntervalInvariant&, const IntervalInvariant&) = default;
    std::string str() const;
};

/// Exact fixed-set extraction: solves f(x) = x per linear piece, merges
/// touching components, and certifies the gap signs piece by piece.
FixSet fix_set(const PLMap& f);

IntervalInvariant sign_word(const PLMap& f);
IntervalInvariant invariant_from(const FixSet& fs);

/// Certified constant sign of f(x) - x on (lo, hi): checks every linear piece
/// of f - id inside the gap (breakpoints and piece midpoints). Throws
/// InvariantError if a root or sign flip is found inside.
Sign sign_on_gap(const PLMap& f, const Rat& lo, const Rat& hi);

}  // namespace homeolab
