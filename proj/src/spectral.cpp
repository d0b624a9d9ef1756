#include "homeolab/spectral.hpp"

#include <algorithm>
#include <map>

#include "homeolab/errors.hpp"

namespace homeolab {

Angle scale(const Angle& a, long n) {
    return Angle(a.theta() * Rat(n));
}

void GenPermUnitary::validate() const {
    if (dim == 0) throw InvariantError("unitary: dimension must be >= 1");
    if (perm.size() != dim || phases.size() != dim)
        throw InvariantError("unitary: perm/phases size must match dim");
    std::vector<bool> hit(dim, false);
    for (std::size_t j : perm) {
        if (j >= dim || hit[j]) throw InvariantError("unitary: perm is not a bijection");
        hit[j] = true;
    }
}

GenPermUnitary GenPermUnitary::identity(std::size_t n) {
    GenPermUnitary u;
    u.dim = n;
    u.perm.resize(n);
    for (std::size_t j = 0; j < n; ++j) u.perm[j] = j;
    u.phases.assign(n, Angle());
    u.validate();
    return u;
}

GenPermUnitary multiply(const GenPermUnitary& a, const GenPermUnitary& b) {
    if (a.dim != b.dim) throw DomainError("unitary product: dimension mismatch");
    // (a*b)(e_j) = a(phase_b[j] e_{perm_b[j]}) = phase_b[j]*phase_a[perm_b[j]] ...
    GenPermUnitary out;
    out.dim = a.dim;
    out.perm.resize(a.dim);
    out.phases.resize(a.dim);
    for (std::size_t j = 0; j < a.dim; ++j) {
        out.perm[j] = a.perm[b.perm[j]];
        out.phases[j] = b.phases[j] + a.phases[b.perm[j]];
    }
    return out;
}

GenPermUnitary inverse(const GenPermUnitary& u) {
    GenPermUnitary out;
    out.dim = u.dim;
    out.perm.resize(u.dim);
    out.phases.resize(u.dim);
    for (std::size_t j = 0; j < u.dim; ++j) {
        out.perm[u.perm[j]] = j;
        out.phases[u.perm[j]] = -u.phases[j];
    }
    return out;
}

std::size_t SpectralData::total_multiplicity() const {
    std::size_t s = 0;
    for (const auto& [a, m] : atoms) s += m;
    return s;
}

std::string SpectralData::str() const {
    std::string s;
    for (const auto& [a, m] : atoms)
        s += "(" + a.theta().str() + " x" + std::to_string(m) + ") ";
    if (!s.empty()) s.pop_back();
    return s;
}

namespace {

std::vector<std::vector<std::size_t>> cycles_of(const GenPermUnitary& u) {
    std::vector<std::vector<std::size_t>> cycles;
    std::vector<bool> seen(u.dim, false);
    for (std::size_t i = 0; i < u.dim; ++i) {
        if (seen[i]) continue;
        std::vector<std::size_t> c;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            c.push_back(j);
            j = u.perm[j];
        }
        cycles.push_back(std::move(c));
    }
    return cycles;
}

}  // namespace

SpectralData spectral_data(const GenPermUnitary& u) {
    u.validate();
    std::map<Rat, std::size_t> acc;
    for (const auto& cycle : cycles_of(u)) {
        Angle s;
        for (std::size_t j : cycle) s = s + u.phases[j];
        long len = static_cast<long>(cycle.size());
        for (long j = 0; j < len; ++j) {
            Angle atom((s.theta() + Rat(j)) / Rat(len));
            acc[atom.theta()] += 1;
        }
    }
    SpectralData out;
    for (const auto& [theta, m] : acc) out.atoms.push_back({Angle(theta), m});
    return out;
}

bool conjugate_decision_unitary(const GenPermUnitary& u1, const GenPermUnitary& u2) {
    if (u1.dim != u2.dim) throw DomainError("conjugacy: dimension mismatch");
    return spectral_data(u1) == spectral_data(u2);
}

GenPermUnitary rotate(const GenPermUnitary& u, const Angle& theta) {
    GenPermUnitary out = u;
    for (auto& p : out.phases) p = p + theta;
    return out;
}

SpectralData shift(const SpectralData& sd, const Angle& theta) {
    std::map<Rat, std::size_t> acc;
    for (const auto& [a, m] : sd.atoms) acc[(a + theta).theta()] += m;
    SpectralData out;
    for (const auto& [t, m] : acc) out.atoms.push_back({Angle(t), m});
    return out;
}

GenPermUnitary multishift_truncated(std::size_t k, std::size_t M) {
    if (k < 1 || M < 1) throw DomainError("multishift: k and M must be >= 1");
    GenPermUnitary u;
    u.dim = k * M;
    u.perm.resize(u.dim);
    u.phases.assign(u.dim, Angle());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < M; ++j)
            u.perm[i * M + j] = i * M + (j + 1) % M;
    return u;
}

std::optional<Angle> bochner_coeff(const GenPermUnitary& u, std::size_t i, long n) {
    if (i >= u.dim) throw DomainError("bochner_coeff: basis index out of range");
    if (n < 0) {
        // <U^{-n} x, x> = conj(<U^n x, x]>): negate the angle.
        auto v = bochner_coeff(u, i, -n);
        if (!v) return std::nullopt;
        return -*v;
    }
    // Walk n steps along the permutation, accumulating phases.
    std::size_t j = i;
    Angle acc;
    for (long s = 0; s < n; ++s) {
        acc = acc + u.phases[j];
        j = u.perm[j];
    }
    if (j != i) return std::nullopt;
    return acc;
}

std::optional<Angle> bochner_coeff_spectral(const GenPermUnitary& u, std::size_t i,
                                            long n) {
    if (i >= u.dim) throw DomainError("bochner_coeff: basis index out of range");
    // mu_{e_i} puts weight 1/L on each atom (s+j)/L of i's cycle. The moment
    // sum (1/L) sum_j e^{2 pi i n (s+j)/L} collapses by the geometric sum:
    // zero unless L divides n, in which case it is e^{2 pi i n s / L}.
    std::size_t len = 1;
    Angle s = u.phases[i];
    for (std::size_t j = u.perm[i]; j != i; j = u.perm[j]) {
        s = s + u.phases[j];
        ++len;
    }
    long L = static_cast<long>(len);
    if (n % L != 0) return std::nullopt;
    return Angle(s.theta() * Rat(n) / Rat(L));
}

}  // namespace homeolab
