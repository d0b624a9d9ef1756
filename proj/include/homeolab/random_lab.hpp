#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homeolab/circle_dynamics.hpp"
#include "homeolab/interval_dynamics.hpp"
#include "homeolab/spectral.hpp"

namespace homeolab {

/// Deterministic splittable generator. Per-trial streams are seeded with
/// seed XOR trial-index, so a report depends only on (seed, config) and
/// never on worker count or scheduling.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Top `b` bits of the next draw, 1 <= b <= 64.
    std::uint64_t bits(unsigned b) { return next() >> (64u - b); }
    /// Uniform value in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n);

  private:
    std::uint64_t state_;
};

inline SplitMix64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return SplitMix64(seed ^ trial);
}

struct SamplerConfig {
    std::uint64_t seed = 0;
    std::size_t trials = 1;
    unsigned dyadic_bits = 32;  // >= 8: parameters are dyadics j/2^bits
    unsigned q_max = 12;
    unsigned n_iter = 64;
    unsigned workers = 1;
    std::size_t piece_ceiling = kDefaultPieceCeiling;
};

/// Exceptional-trial evidence: the exact parameter plus the classifier's
/// reason and witness, re-checkable by re-running the classifier.
struct Certificate {
    std::string id;
    std::size_t trial = 0;
    std::string parameter;
    std::string reason;
    std::string witness;
};

struct TrialRecord {
    std::size_t trial = 0;
    std::string parameter;
    std::string verdict;  // non-haar-null | haar-null | undetermined | resource-limit
    std::string label;    // class detail, e.g. "n=2,+" or "1/3,k=2"
    std::optional<std::string> certificate_id;
};

struct ExperimentReport {
    std::string kind;  // "interval" | "circle"
    SamplerConfig config;
    std::vector<TrialRecord> records;                    // by trial index
    std::vector<Certificate> certificates;               // by trial index
    std::map<std::string, std::size_t> verdict_counts;   // sums to trials
    std::map<std::string, std::size_t> histogram;        // non-haar-null labels
    std::map<std::string, std::pair<Rat, Rat>> wilson;   // per-verdict 95% CI
    std::size_t non_haar_null = 0;
    std::size_t resolved = 0;           // circle: trials with rational rotation
    std::size_t parity_violations = 0;  // circle: NonHaarNull with K mod 2q != 0
};

/// Draws a = 1/4 + j/2^(bits+1) (uniform dyadic j) and the tent map f_a
/// with breakpoints (0,0), (1/2,a), (1,1). Requires bits >= 8.
std::pair<Rat, PLMap> sample_tent(std::uint64_t seed, unsigned bits);

/// Draws alpha = j/2^bits and the rigid rotation lift x + alpha.
std::pair<Rat, CircleLift> sample_rotation(std::uint64_t seed, unsigned bits);

/// Monte Carlo over the tent witness measure: classifies g^{-1} f_a per
/// trial. Exceptions (Haar-null draws, resource failures) carry certificates.
ExperimentReport experiment_interval(const PLMap& g, const SamplerConfig& config);

/// Monte Carlo over the rotation witness measure: classifies R_alpha f.
ExperimentReport experiment_circle(const CircleLift& f, const SamplerConfig& config);

/// Re-runs the classifier on a certificate's recorded parameter and checks
/// that the reason (and witness, where applicable) reproduces exactly.
bool recheck_certificate_interval(const PLMap& g, const Certificate& cert,
                                  const SamplerConfig& config);
bool recheck_certificate_circle(const CircleLift& f, const Certificate& cert,
                                const SamplerConfig& config);

/// 95% Wilson score interval with z = 49/25, computed in exact rational
/// arithmetic; the square root is enclosed outward, so the reported interval
/// contains the closed-form one. Result is clamped to [0,1].
std::pair<Rat, Rat> wilson_interval(std::size_t successes, std::size_t trials);

/// Deterministic generators for randomized tests and stress sets.
PLMap random_interval_map(SplitMix64& rng, std::size_t pieces, unsigned bits);
CircleLift random_lift(SplitMix64& rng, std::size_t pieces, unsigned bits);
/// A dyadically perturbed rational rotation p/q (q <= max_q); mode locking
/// makes rational rotation numbers frequent without forcing them.
CircleLift random_perturbed_rotation(SplitMix64& rng, unsigned max_q, unsigned bits);
GenPermUnitary random_unitary(SplitMix64& rng, std::size_t dim, unsigned bits);

/// Runs fn(0..n-1) on `workers` threads; results land by index, so the
/// output is identical for every worker count.
std::vector<TrialRecord> run_trials(std::size_t n, unsigned workers,
                                    const std::function<TrialRecord(std::size_t)>& fn);

}  // namespace homeolab
