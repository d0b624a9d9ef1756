#include <doctest.h>

#include "homeolab/errors.hpp"
#include "homeolab/random_lab.hpp"

using namespace homeolab;

TEST_CASE("samplers are deterministic and exact") {
    auto [a1, f1] = sample_tent(42, 32);
    auto [a2, f2] = sample_tent(42, 32);
    CHECK(a1 == a2);
    CHECK(f1 == f2);
    CHECK(a1 >= Rat(1, 4));
    CHECK(a1 < Rat(3, 4));
    CHECK(eval(f1, Rat(1, 2)) == a1);
    auto [a3, f3] = sample_tent(43, 32);
    CHECK(a1 != a3);  // overwhelmingly likely and fixed by the seeds
    (void)f3;

    auto [al1, r1] = sample_rotation(42, 32);
    auto [al2, r2] = sample_rotation(42, 32);
    CHECK(al1 == al2);
    CHECK(r1 == r2);
    CHECK(al1 >= Rat(0));
    CHECK(al1 < Rat(1));
    CHECK_THROWS_AS(sample_tent(1, 4), DomainError);
}

TEST_CASE("wilson intervals") {
    auto [lo0, hi0] = wilson_interval(0, 1);
    CHECK(lo0 == Rat(0));
    CHECK(hi0 > Rat(0));

    auto [lon, hin] = wilson_interval(5, 5);
    CHECK(hin == Rat(1));
    CHECK(lon < Rat(1));

    auto [lo, hi] = wilson_interval(50, 100);
    // Symmetric about the Wilson center, which is near 1/2.
    Rat z(49, 25);
    Rat z2 = z * z;
    Rat n(100);
    Rat center = (Rat(1, 2) + z2 / (Rat(2) * n)) / (Rat(1) + z2 / n);
    CHECK((center - lo) == (hi - center));
    CHECK((center - Rat(1, 2)).abs() < Rat(1, 100));
    CHECK(lo > Rat(2, 5));
    CHECK(hi < Rat(3, 5));

    CHECK_THROWS_AS(wilson_interval(2, 1), DomainError);
    CHECK_THROWS_AS(wilson_interval(0, 0), DomainError);
}

TEST_CASE("experiment_interval with identity baseline") {
    SamplerConfig cfg;
    cfg.seed = 7;
    cfg.trials = 400;
    cfg.dyadic_bits = 16;
    ExperimentReport rep = experiment_interval(PLMap::identity(), cfg);

    std::size_t total = 0;
    for (const auto& [v, c] : rep.verdict_counts) total += c;
    CHECK(total == cfg.trials);
    // g = id: only the draw a = 1/2 degenerates, so the histogram splits
    // between (n=0,+) and (n=0,-).
    for (const auto& [label, count] : rep.histogram) {
        bool ok = label == "n=0,+" || label == "n=0,-";
        CHECK(ok);
        (void)count;
    }
    CHECK(rep.non_haar_null + rep.certificates.size() == cfg.trials);
    for (const auto& c : rep.certificates)
        CHECK(recheck_certificate_interval(PLMap::identity(), c, cfg));
    // The a = 1/2 draw is the only possible exception at these settings.
    for (const auto& c : rep.certificates) CHECK(c.parameter == "1/2");
}

TEST_CASE("degenerate draws are certified and recheckable") {
    // seed 0, bits 8: trial 17 draws exactly a = 1/2, so g = id makes that
    // trial the identity map, an interior-segment degeneracy.
    SamplerConfig cfg;
    cfg.seed = 0;
    cfg.trials = 18;
    cfg.dyadic_bits = 8;
    ExperimentReport rep = experiment_interval(PLMap::identity(), cfg);
    REQUIRE(rep.certificates.size() >= 1);
    bool found = false;
    for (const auto& c : rep.certificates) {
        if (c.trial == 17) {
            found = true;
            CHECK(c.parameter == "1/2");
            CHECK(c.reason == "interior-segment");
            CHECK(c.witness == "segment 0/1 1/1");
            CHECK(recheck_certificate_interval(PLMap::identity(), c, cfg));
        }
    }
    CHECK(found);
    // The record points at its certificate.
    REQUIRE(rep.records.size() == 18);
    CHECK(rep.records[17].verdict == "haar-null");
    CHECK(rep.records[17].certificate_id.has_value());
}

TEST_CASE("experiment_interval against a zigzag translate") {
    SamplerConfig cfg;
    cfg.seed = 11;
    cfg.trials = 300;
    cfg.dyadic_bits = 24;
    PLMap g = representative(3, Sign::Pos);
    ExperimentReport rep = experiment_interval(g, cfg);
    CHECK(rep.non_haar_null >= 299 * 300 / 300);  // >= 0.996 at this scale
    for (const auto& c : rep.certificates)
        CHECK(recheck_certificate_interval(g, c, cfg));
    // Determinism across worker counts, byte for byte on the records.
    SamplerConfig cfg8 = cfg;
    cfg8.workers = 8;
    ExperimentReport rep8 = experiment_interval(g, cfg8);
    REQUIRE(rep.records.size() == rep8.records.size());
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
        CHECK(rep.records[i].parameter == rep8.records[i].parameter);
        CHECK(rep.records[i].verdict == rep8.records[i].verdict);
        CHECK(rep.records[i].label == rep8.records[i].label);
    }
    CHECK(rep.histogram == rep8.histogram);
    CHECK(rep.verdict_counts == rep8.verdict_counts);
}

TEST_CASE("experiment_circle identity baseline is the documented pathology") {
    SamplerConfig cfg;
    cfg.seed = 7;
    cfg.trials = 120;
    cfg.dyadic_bits = 16;
    cfg.q_max = 12;
    cfg.n_iter = 32;
    ExperimentReport rep = experiment_circle(CircleLift::identity(), cfg);
    // R_alpha with dyadic alpha: either detected rational (infinite periodic)
    // or honestly undetermined; never non-haar-null.
    CHECK(rep.non_haar_null == 0);
    for (const auto& r : rep.records) {
        bool ok = r.verdict == "haar-null" || r.verdict == "undetermined";
        CHECK(ok);
        if (r.verdict == "haar-null") CHECK(r.label == "infinite-periodic");
    }
    for (const auto& c : rep.certificates)
        CHECK(recheck_certificate_circle(CircleLift::identity(), c, cfg));
}

TEST_CASE("experiment_circle on a representative") {
    SamplerConfig cfg;
    cfg.seed = 3;
    cfg.trials = 150;
    cfg.dyadic_bits = 20;
    cfg.q_max = 8;
    cfg.n_iter = 32;
    CircleLift f = representative_circle(0, 1, 1);
    ExperimentReport rep = experiment_circle(f, cfg);
    CHECK(rep.parity_violations == 0);
    CHECK(rep.resolved > 0);
    // Every resolved trial must be non-haar-null or carry a certificate.
    std::size_t resolved_nhn = 0;
    for (const auto& r : rep.records)
        if (r.verdict == "non-haar-null") ++resolved_nhn;
    CHECK(resolved_nhn == rep.non_haar_null);
    for (const auto& c : rep.certificates)
        CHECK(recheck_certificate_circle(f, c, cfg));
    // Orbit counts in labels are whole numbers of pairs: "p/q,k=..".
    for (const auto& [label, cnt] : rep.histogram) {
        CHECK(label.find(",k=") != std::string::npos);
        (void)cnt;
    }
}

TEST_CASE("experiment_circle parity tally on the half-rotation class") {
    SamplerConfig cfg;
    cfg.seed = 19;
    cfg.trials = 200;
    cfg.dyadic_bits = 20;
    cfg.q_max = 8;
    cfg.n_iter = 16;
    ExperimentReport rep = experiment_circle(representative_circle(1, 2, 1), cfg);
    CHECK(rep.parity_violations == 0);
    // Every non-haar-null label carries a whole orbit-pair count, i.e. the
    // periodic point count was divisible by 2q.
    for (const auto& [label, count] : rep.histogram) {
        CHECK(label.find(",k=") != std::string::npos);
        (void)count;
    }
}

TEST_CASE("random generators produce valid objects") {
    SplitMix64 rng(1234);
    for (int t = 0; t < 20; ++t) {
        PLMap f = random_interval_map(rng, 1 + rng.below(20), 16);
        CHECK(f.is_interval_map());
        CircleLift F = random_lift(rng, 1 + rng.below(20), 16);
        CHECK(F.is_normalized());
        CircleLift P = random_perturbed_rotation(rng, 6, 16);
        CHECK(P.is_normalized());
    }
}

TEST_CASE("perturbed rotations lock onto rational rotation numbers often") {
    SplitMix64 rng(2025);
    int resolved = 0, crossing = 0;
    const int total = 60;
    for (int t = 0; t < total; ++t) {
        CircleLift F = random_perturbed_rotation(rng, 4, 12);
        CircleClass c = classify_circle(F, 6, 16);
        if (c.rotation && c.rotation->rational) {
            ++resolved;
            if (c.kind == CircleClass::Kind::NonHaarNull) {
                ++crossing;
                CHECK(c.periodic_points % (2 * static_cast<std::size_t>(c.rotation->q)) == 0);
            }
        }
    }
    // Mode locking should make rational rotation the common case.
    CHECK(resolved > total / 3);
    CHECK(crossing > 0);
}

TEST_CASE("trial runner is worker-count independent") {
    auto fn = [](std::size_t i) {
        TrialRecord r;
        r.trial = i;
        r.parameter = std::to_string(i * 3);
        r.verdict = (i % 2 == 0) ? "even" : "odd";
        return r;
    };
    auto a = run_trials(103, 1, fn);
    auto b = run_trials(103, 8, fn);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].trial == b[i].trial);
        CHECK(a[i].parameter == b[i].parameter);
        CHECK(a[i].verdict == b[i].verdict);
    }
}
