#include "homeolab/random_lab.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <thread>

#include "homeolab/errors.hpp"

namespace homeolab {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
    if (n == 0) throw DomainError("below(0)");
    std::uint64_t mask = ~0ull;
    if ((n & (n - 1)) == 0) return next() & (n - 1);
    // Rejection below the largest multiple of n.
    std::uint64_t limit = mask - mask % n;
    for (;;) {
        std::uint64_t v = next();
        if (v < limit) return v % n;
    }
}

std::pair<Rat, PLMap> sample_tent(std::uint64_t seed, unsigned bits) {
    if (bits < 8 || bits > 62) throw DomainError("sample_tent: bits must be in [8,62]");
    SplitMix64 rng(seed);
    Rat a = Rat(1, 4) + dyadic(rng.bits(bits), bits + 1);
    return {a, PLMap::tent(a)};
}

std::pair<Rat, CircleLift> sample_rotation(std::uint64_t seed, unsigned bits) {
    if (bits < 8 || bits > 62) throw DomainError("sample_rotation: bits must be in [8,62]");
    SplitMix64 rng(seed);
    Rat alpha = dyadic(rng.bits(bits), bits);
    return {alpha, CircleLift::rotation(alpha)};
}

std::vector<TrialRecord> run_trials(std::size_t n, unsigned workers,
                                    const std::function<TrialRecord(std::size_t)>& fn) {
    std::vector<TrialRecord> out(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

namespace {

// Aggregation shared by both experiments. Records must be in trial order.
ExperimentReport aggregate(std::string kind, const SamplerConfig& config,
                           std::vector<TrialRecord> records,
                           std::vector<Certificate> certs) {
    ExperimentReport rep;
    rep.kind = std::move(kind);
    rep.config = config;
    // Certificates arrive in trial order; ids are assigned by position.
    for (std::size_t i = 0; i < certs.size(); ++i) {
        certs[i].id = "c" + std::to_string(i);
        for (auto& r : records)
            if (r.trial == certs[i].trial) r.certificate_id = certs[i].id;
    }
    for (const auto& r : records) {
        rep.verdict_counts[r.verdict] += 1;
        if (r.verdict == "non-haar-null") {
            rep.histogram[r.label] += 1;
            rep.non_haar_null += 1;
        }
    }
    for (const auto& [verdict, count] : rep.verdict_counts)
        rep.wilson[verdict] = wilson_interval(count, config.trials);
    rep.records = std::move(records);
    rep.certificates = std::move(certs);
    return rep;
}

std::string interval_label(const IntervalClass& c) {
    switch (c.kind) {
        case IntervalClass::Kind::NonHaarNull:
            return "n=" + std::to_string(c.interior_fixed_points) + "," +
                   sign_char(c.first_sign);
        case IntervalClass::Kind::InteriorSegment: return "interior-segment";
        case IntervalClass::Kind::NonCrossingPoint: return "non-crossing-point";
    }
    return "?";
}

std::string interval_witness(const IntervalClass& c) {
    if (!c.witness) return "";
    if (c.witness->is_point()) return "point " + c.witness->a.str();
    return "segment " + c.witness->a.str() + " " + c.witness->b.str();
}

}  // namespace

ExperimentReport experiment_interval(const PLMap& g, const SamplerConfig& config) {
    if (config.trials == 0) throw DomainError("experiment: trials must be >= 1");
    PLMap g_inv = invert(g);

    auto one = [&](std::size_t i) {
        TrialRecord r;
        r.trial = i;
        auto [a, fa] = sample_tent(config.seed ^ i, config.dyadic_bits);
        r.parameter = a.str();
        try {
            PLMap target = compose(g_inv, fa, config.piece_ceiling);
            IntervalClass c = classify(target);
            r.label = interval_label(c);
            r.verdict = c.non_haar_null() ? "non-haar-null" : "haar-null";
        } catch (const ResourceLimitError&) {
            r.verdict = "resource-limit";
            r.label = "ceiling";
        }
        return r;
    };
    std::vector<TrialRecord> records =
        run_trials(config.trials, config.workers, one);

    // Certificates are recomputed sequentially for the exceptional trials;
    // the classifier is deterministic, so this is pure bookkeeping.
    std::vector<Certificate> certs;
    for (const auto& r : records) {
        if (r.verdict == "non-haar-null") continue;
        Certificate c;
        c.trial = r.trial;
        c.parameter = r.parameter;
        if (r.verdict == "resource-limit") {
            c.reason = "resource-limit";
        } else {
            PLMap fa = PLMap::tent(Rat::from_string(r.parameter));
            IntervalClass cls = classify(compose(g_inv, fa, config.piece_ceiling));
            c.reason = interval_label(cls);
            c.witness = interval_witness(cls);
        }
        certs.push_back(std::move(c));
    }
    return aggregate("interval", config, std::move(records), std::move(certs));
}

namespace {

std::string circle_label(const CircleClass& c) {
    switch (c.kind) {
        case CircleClass::Kind::NonHaarNull:
            return c.rotation->str() + ",k=" + std::to_string(c.orbit_pairs);
        case CircleClass::Kind::InfinitePeriodic: return "infinite-periodic";
        case CircleClass::Kind::NonCrossing: return "non-crossing";
        case CircleClass::Kind::Undetermined: return "undetermined";
    }
    return "?";
}

std::string circle_witness(const CircleClass& c) {
    if (c.kind == CircleClass::Kind::Undetermined && c.rotation)
        return "enclosure " + c.rotation->lo.str() + " " + c.rotation->hi.str();
    if (c.witness) return "point " + c.witness->str();
    return "";
}

}  // namespace

ExperimentReport experiment_circle(const CircleLift& f, const SamplerConfig& config) {
    if (config.trials == 0) throw DomainError("experiment: trials must be >= 1");

    auto classify_at = [&](const Rat& alpha) {
        CircleLift shifted = normalized(add_constant(f, alpha));
        return classify_circle(shifted, config.q_max, config.n_iter,
                               config.piece_ceiling);
    };

    auto one = [&](std::size_t i) {
        TrialRecord r;
        r.trial = i;
        auto [alpha, lift] = sample_rotation(config.seed ^ i, config.dyadic_bits);
        (void)lift;
        r.parameter = alpha.str();
        try {
            CircleClass c = classify_at(alpha);
            r.label = circle_label(c);
            switch (c.kind) {
                case CircleClass::Kind::NonHaarNull: r.verdict = "non-haar-null"; break;
                case CircleClass::Kind::Undetermined: r.verdict = "undetermined"; break;
                default: r.verdict = "haar-null";
            }
        } catch (const ResourceLimitError&) {
            r.verdict = "resource-limit";
            r.label = "ceiling";
        } catch (const InvariantError&) {
            // classify_circle enforces the parity law K mod 2q = 0 itself;
            // a violation would surface here.
            r.verdict = "parity-violation";
            r.label = "parity";
        }
        return r;
    };
    std::vector<TrialRecord> records =
        run_trials(config.trials, config.workers, one);

    std::vector<Certificate> certs;
    std::size_t resolved = 0, parity_violations = 0;
    for (const auto& r : records) {
        if (r.verdict == "non-haar-null" || r.verdict == "haar-null") ++resolved;
        if (r.verdict == "parity-violation") ++parity_violations;
        if (r.verdict == "non-haar-null" || r.verdict == "parity-violation") continue;
        Certificate cert;
        cert.trial = r.trial;
        cert.parameter = r.parameter;
        if (r.verdict == "resource-limit") {
            cert.reason = "resource-limit";
        } else {
            CircleClass c = classify_at(Rat::from_string(r.parameter));
            cert.reason = circle_label(c);
            cert.witness = circle_witness(c);
        }
        certs.push_back(std::move(cert));
    }
    ExperimentReport rep =
        aggregate("circle", config, std::move(records), std::move(certs));
    rep.resolved = resolved;
    rep.parity_violations = parity_violations;
    return rep;
}

bool recheck_certificate_interval(const PLMap& g, const Certificate& cert,
                                  const SamplerConfig& config) {
    if (cert.reason == "resource-limit") return true;
    PLMap fa = PLMap::tent(Rat::from_string(cert.parameter));
    IntervalClass cls = classify(compose(invert(g), fa, config.piece_ceiling));
    return !cls.non_haar_null() && interval_label(cls) == cert.reason &&
           interval_witness(cls) == cert.witness;
}

bool recheck_certificate_circle(const CircleLift& f, const Certificate& cert,
                                const SamplerConfig& config) {
    if (cert.reason == "resource-limit") return true;
    CircleLift shifted =
        normalized(add_constant(f, Rat::from_string(cert.parameter)));
    CircleClass c =
        classify_circle(shifted, config.q_max, config.n_iter, config.piece_ceiling);
    return !c.non_haar_null() && circle_label(c) == cert.reason &&
           circle_witness(c) == cert.witness;
}

std::pair<Rat, Rat> wilson_interval(std::size_t successes, std::size_t trials) {
    if (trials == 0 || successes > trials)
        throw DomainError("wilson_interval: need 0 <= successes <= trials, trials >= 1");
    const Rat z(49, 25);
    Rat n(static_cast<long>(trials));
    Rat p_hat(static_cast<long>(successes), static_cast<long>(trials));
    Rat z2 = z * z;
    Rat denom = Rat(1) + z2 / n;
    Rat center = (p_hat + z2 / (Rat(2) * n)) / denom;
    Rat radicand = p_hat * (Rat(1) - p_hat) / n + z2 / (Rat(4) * n * n);

    // Outward upper bound of sqrt(radicand) at 2^-64 resolution:
    // x = isqrt(floor(radicand * 4^64)) gives x/2^64 <= sqrt < (x+1)/2^64.
    mpz_class scaled_num = radicand.num();
    mpz_mul_2exp(scaled_num.get_mpz_t(), scaled_num.get_mpz_t(), 128);
    mpz_class m = scaled_num / radicand.den();
    mpz_class x;
    mpz_sqrt(x.get_mpz_t(), m.get_mpz_t());
    mpz_class two64(1);
    mpz_mul_2exp(two64.get_mpz_t(), two64.get_mpz_t(), 64);
    Rat sqrt_upper(x + 1, two64);

    Rat rad = z * sqrt_upper / denom;
    Rat lo = center - rad;
    Rat hi = center + rad;
    if (lo < Rat(0)) lo = Rat(0);
    if (hi > Rat(1)) hi = Rat(1);
    return {lo, hi};
}

PLMap random_interval_map(SplitMix64& rng, std::size_t pieces, unsigned bits) {
    if (pieces < 1) throw DomainError("random_interval_map: pieces must be >= 1");
    auto draw_interior = [&](std::size_t count) {
        std::set<Rat> vals;
        while (vals.size() < count) {
            Rat v = dyadic(rng.bits(bits), bits);
            if (v > Rat(0) && v < Rat(1)) vals.insert(v);
        }
        return std::vector<Rat>(vals.begin(), vals.end());
    };
    std::vector<Rat> xs = draw_interior(pieces - 1);
    std::vector<Rat> ys = draw_interior(pieces - 1);
    std::vector<Breakpoint> pts;
    pts.push_back({Rat(0), Rat(0)});
    for (std::size_t i = 0; i < xs.size(); ++i) pts.push_back({xs[i], ys[i]});
    pts.push_back({Rat(1), Rat(1)});
    return canonicalize(PLMap(std::move(pts)));
}

CircleLift random_lift(SplitMix64& rng, std::size_t pieces, unsigned bits) {
    if (pieces < 1) throw DomainError("random_lift: pieces must be >= 1");
    auto draw_interior = [&](std::size_t count) {
        std::set<Rat> vals;
        while (vals.size() < count) {
            Rat v = dyadic(rng.bits(bits), bits);
            if (v > Rat(0) && v < Rat(1)) vals.insert(v);
        }
        return std::vector<Rat>(vals.begin(), vals.end());
    };
    std::vector<Rat> xs = draw_interior(pieces - 1);
    std::vector<Rat> ds = draw_interior(pieces - 1);
    Rat y0 = dyadic(rng.bits(bits), bits);
    std::vector<Breakpoint> pts;
    pts.push_back({Rat(0), y0});
    for (std::size_t i = 0; i < xs.size(); ++i) pts.push_back({xs[i], y0 + ds[i]});
    pts.push_back({Rat(1), y0 + Rat(1)});
    return canonicalize_lift(CircleLift(std::move(pts)));
}

CircleLift random_perturbed_rotation(SplitMix64& rng, unsigned max_q, unsigned bits) {
    long q = static_cast<long>(rng.below(max_q)) + 1;
    long p = 0;
    do {
        p = static_cast<long>(rng.below(static_cast<std::uint64_t>(q)));
    } while (std::gcd(p, q) != 1);

    std::size_t nodes = 4 + rng.below(5);
    std::set<Rat> pos_set;
    pos_set.insert(Rat(0));
    while (pos_set.size() < nodes) {
        Rat v = dyadic(rng.bits(bits), bits);
        if (v < Rat(1)) pos_set.insert(v);
    }
    std::vector<Rat> pos(pos_set.begin(), pos_set.end());

    Rat min_gap = pos[0] + Rat(1) - pos.back();
    for (std::size_t i = 0; i + 1 < pos.size(); ++i)
        min_gap = min(min_gap, pos[i + 1] - pos[i]);
    Rat amp = min_gap / Rat(4);

    Rat shift(p, q);
    std::vector<Breakpoint> pts;
    std::vector<Rat> eps(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
        // Signed dyadic in (-amp, amp); small enough to keep monotonicity.
        Rat u = dyadic(rng.bits(bits), bits);
        eps[i] = amp * (u * Rat(2) - Rat(1));
        pts.push_back({pos[i], pos[i] + shift + eps[i]});
    }
    pts.push_back({Rat(1), pos[0] + Rat(1) + shift + eps[0]});
    return normalized(canonicalize_lift(CircleLift(std::move(pts))));
}

GenPermUnitary random_unitary(SplitMix64& rng, std::size_t dim, unsigned bits) {
    if (dim == 0) throw DomainError("random_unitary: dim must be >= 1");
    GenPermUnitary u;
    u.dim = dim;
    u.perm.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) u.perm[i] = i;
    for (std::size_t i = dim; i > 1; --i)
        std::swap(u.perm[i - 1], u.perm[rng.below(i)]);
    u.phases.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i)
        u.phases.push_back(Angle(dyadic(rng.bits(bits), bits)));
    u.validate();
    return u;
}

}  // namespace homeolab
