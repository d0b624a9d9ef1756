#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "homeolab/rat.hpp"

namespace homeolab {

/// A point of the unit circle, e^{2*pi*i*theta}, stored as theta mod 1.
class Angle {
  public:
    Angle() : theta_(0) {}
    explicit Angle(const Rat& theta) : theta_(theta.frac()) {}
    const Rat& theta() const { return theta_; }
    Angle operator+(const Angle& o) const { return Angle(theta_ + o.theta_); }
    Angle operator-() const { return Angle(-theta_); }
    friend bool operator==(const Angle&, const Angle&) = default;
    friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
        return a.theta_ <=> b.theta_;
    }

  private:
    Rat theta_;
};

/// Scales an angle by an integer: n * theta mod 1.
Angle scale(const Angle& a, long n);

/// Generalized permutation unitary on C^N: basis vector j is sent to
/// e^{2*pi*i*phase_j} times basis vector perm[j]. Unitary by construction;
/// the spectrum is exact roots-of-unity data per permutation cycle.
struct GenPermUnitary {
    std::size_t dim = 0;
    std::vector<std::size_t> perm;
    std::vector<Angle> phases;

    /// Validates dim >= 1, perm a bijection of {0..dim-1}, phases matching.
    void validate() const;

    static GenPermUnitary identity(std::size_t n);
};

/// Group operations, computed symbolically inside the generalized
/// permutation group.
GenPermUnitary multiply(const GenPermUnitary& a, const GenPermUnitary& b);  // a*b
GenPermUnitary inverse(const GenPermUnitary& u);

/// Atoms of the spectral measure with multiplicities; the finite analog of
/// (mu_U, n_U). Angles strictly increasing; multiplicities sum to dim.
struct SpectralData {
    std::vector<std::pair<Angle, std::size_t>> atoms;
    friend bool operator==(const SpectralData&, const SpectralData&) = default;
    std::size_t total_multiplicity() const;
    std::string str() const;
};

/// Spectrum per permutation cycle: a cycle of length L with phase-sum s
/// contributes the L-th roots of e^{2*pi*i*s}, i.e. angles (s+j)/L.
SpectralData spectral_data(const GenPermUnitary& u);

/// Finite Theorem-5.2 analog: unitary equivalence iff identical SpectralData.
bool conjugate_decision_unitary(const GenPermUnitary& u1, const GenPermUnitary& u2);

/// Scalar rotation qU: every phase shifted by theta. The spectral data of the
/// result is the theta-shift of the original (pushforward identity).
GenPermUnitary rotate(const GenPermUnitary& u, const Angle& theta);

/// Shift every atom by theta (the pushforward on spectra).
SpectralData shift(const SpectralData& sd, const Angle& theta);

/// k disjoint M-cycles with zero phases: the cyclic truncation of the
/// multishift e_{i,j} -> e_{i,j+1}. Spectrum: atoms j/M, multiplicity k each.
GenPermUnitary multishift_truncated(std::size_t k, std::size_t M);

/// <U^n e_i, e_i> by direct iteration: nullopt encodes the value 0, an Angle
/// encodes the unimodular value e^{2*pi*i*angle}.
std::optional<Angle> bochner_coeff(const GenPermUnitary& u, std::size_t i, long n);

/// The same coefficient from the atomic measure of e_i via the closed-form
/// geometric sum: (1/L) * sum_j e^{2*pi*i*n*(s+j)/L} is 0 unless L | n.
/// Independent evaluation route for the two-path agreement check.
std::optional<Angle> bochner_coeff_spectral(const GenPermUnitary& u, std::size_t i,
                                            long n);

}  // namespace homeolab
