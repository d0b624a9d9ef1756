#include <doctest.h>

#include "homeolab/json_io.hpp"
#include "schema_check.hpp"

using namespace homeolab;

TEST_CASE("map payload round trip is canonicalization") {
    std::string text = R"({"kind":"interval","breakpoints":[
        ["0/1","0/1"],["1/4","1/4"],["2/4","1/2"],["3/4","7/8"],["1/1","1/1"]]})";
    PLMap f = map_from_json(parse_json_text(text));
    Json emitted = map_to_json(f);
    // Collinear (1/4,1/4) dropped, "2/4" reduced.
    CHECK(emitted["breakpoints"].size() == 4);
    CHECK(emitted["breakpoints"][1][0] == "1/2");
    PLMap f2 = map_from_json(emitted);
    CHECK(canonicalize(f) == f2);
    CHECK(map_to_json(f2) == emitted);
}

TEST_CASE("map payload errors are reported distinctly") {
    CHECK_THROWS_AS(parse_json_text("{"), ParseError);
    CHECK_THROWS_AS(map_from_json(parse_json_text(R"({"breakpoints":[]})")), ParseError);
    CHECK_THROWS_AS(
        map_from_json(parse_json_text(
            R"({"kind":"interval","breakpoints":[["0/1","0/1"],["1/2","0.5"],["1/1","1/1"]]})")),
        ParseError);
    // Non-monotone: invariant violation rather than parse error.
    CHECK_THROWS_AS(
        map_from_json(parse_json_text(
            R"({"kind":"interval","breakpoints":[["0/1","0/1"],["1/2","3/4"],["1/3","4/5"],["1/1","1/1"]]})")),
        InvariantError);
    // Domain violation: x_0 != 0.
    CHECK_THROWS_AS(
        map_from_json(parse_json_text(
            R"({"kind":"interval","breakpoints":[["1/8","0/1"],["1/1","1/1"]]})")),
        InvariantError);
}

TEST_CASE("lift payload requires normalization") {
    std::string text = R"({"kind":"lift","breakpoints":[["0/1","3/2"],["1/1","5/2"]]})";
    CHECK_THROWS_AS(lift_from_json(parse_json_text(text)), InvariantError);
    CircleLift r = lift_from_json(parse_json_text(
        R"({"kind":"lift","breakpoints":[["0/1","2/5"],["1/1","7/5"]]})"));
    CHECK(r == CircleLift::rotation(Rat(2, 5)));
    CHECK(lift_to_json(r)["kind"] == "lift");
}

TEST_CASE("unitary payload round trip") {
    GenPermUnitary u = multishift_truncated(2, 3);
    u.phases[4] = Angle(Rat(1, 3));
    Json j = unitary_to_json(u);
    GenPermUnitary v = unitary_from_json(j);
    CHECK(v.dim == u.dim);
    CHECK(v.perm == u.perm);
    CHECK(v.phases == u.phases);
    CHECK_THROWS_AS(
        unitary_from_json(parse_json_text(R"({"dim":2,"perm":[0,0],"phases":["0/1","0/1"]})")),
        InvariantError);
}

TEST_CASE("validate_payload names violations") {
    CHECK(validate_payload(
              R"({"kind":"interval","breakpoints":[["0/1","0/1"],["1/1","1/1"]]})")
              .empty());
    auto d1 = validate_payload(
        R"({"kind":"interval","breakpoints":[["0/1","0/1"],["1/2","3/4"],["1/3","4/5"],["1/1","1/1"]]})");
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].message.find("strictly increasing") != std::string::npos);
    auto d2 = validate_payload(
        R"({"kind":"lift","breakpoints":[["0/1","1/4"],["1/1","9/4"]]})");
    REQUIRE(d2.size() == 1);
    CHECK(d2[0].message.find("y_0 + 1") != std::string::npos);
    auto d3 = validate_payload("not json at all");
    REQUIRE(d3.size() == 1);
    auto d4 = validate_payload(R"({"dim":2,"perm":[1,0],"phases":["0/1","1/2"]})");
    CHECK(d4.empty());
}

TEST_CASE("emitted payloads validate against the shipped schemas") {
    schema::Validator v(HOMEOLAB_SCHEMA_DIR);
    CHECK(v.check("map.schema.json", map_to_json(PLMap::tent(Rat(2, 3)))));
    CHECK(v.check("map.schema.json", lift_to_json(CircleLift::rotation(Rat(1, 3)))));
    CHECK(v.check("unitary.schema.json", unitary_to_json(multishift_truncated(2, 2))));
    CHECK(v.check("spectral.schema.json",
                  spectral_to_json(spectral_data(multishift_truncated(2, 2)))));
    CHECK(v.check("interval-class.schema.json",
                  interval_class_to_json(classify(PLMap::tent(Rat(1, 3))))));
    CHECK(v.check("interval-class.schema.json",
                  interval_class_to_json(classify(PLMap::identity()))));
    CHECK(v.check("circle-class.schema.json",
                  circle_class_to_json(
                      classify_circle(representative_circle(1, 2, 1), 12, 64))));
    CHECK(v.check("circle-class.schema.json",
                  circle_class_to_json(
                      classify_circle(CircleLift::rotation(Rat(89, 144)), 12, 64))));
    CHECK(v.check("conjugacy-certificate.schema.json",
                  decision_to_json(conjugate_decision(PLMap::tent(Rat(1, 3)),
                                                      PLMap::tent(Rat(5, 12))))));
    CHECK(v.check("conjugacy-certificate.schema.json",
                  decision_to_json(conjugate_decision(PLMap::tent(Rat(1, 3)),
                                                      PLMap::tent(Rat(2, 3))))));
    SamplerConfig cfg;
    cfg.seed = 1;
    cfg.trials = 20;
    cfg.dyadic_bits = 12;
    CHECK(v.check("experiment-summary.schema.json",
                  report_to_json(experiment_interval(PLMap::identity(), cfg))));
    cfg.q_max = 6;
    cfg.n_iter = 16;
    CHECK(v.check("experiment-summary.schema.json",
                  report_to_json(experiment_circle(CircleLift::identity(), cfg))));
}

TEST_CASE("csv log shape") {
    SamplerConfig cfg;
    cfg.seed = 5;
    cfg.trials = 3;
    cfg.dyadic_bits = 10;
    std::string csv = report_to_csv(experiment_interval(PLMap::identity(), cfg));
    CHECK(csv.rfind("trial,parameter,verdict,label,certificate_id\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
