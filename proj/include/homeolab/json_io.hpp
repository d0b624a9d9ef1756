#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "homeolab/circle_dynamics.hpp"
#include "homeolab/interval_dynamics.hpp"
#include "homeolab/random_lab.hpp"
#include "homeolab/spectral.hpp"

namespace homeolab {

// Field order in emitted JSON is fixed, so identical inputs give identical
// bytes; that is what the CLI determinism contract rides on.
using Json = nlohmann::ordered_json;

/// Map payloads: {"kind":"interval"|"lift","breakpoints":[["p/q","p/q"],...]}.
/// Emission canonicalizes (collinear points dropped, rationals reduced).
Json map_to_json(const PLMap& f);
Json lift_to_json(const CircleLift& F);
PLMap map_from_json(const Json& j);
CircleLift lift_from_json(const Json& j);

/// "interval" or "lift" (throws ParseError on anything else).
std::string payload_kind(const Json& j);

/// Operator payload: {"dim":N,"perm":[...],"phases":["p/q",...]}.
Json unitary_to_json(const GenPermUnitary& u);
GenPermUnitary unitary_from_json(const Json& j);

Json spectral_to_json(const SpectralData& sd);

Json interval_class_to_json(const IntervalClass& c);
Json circle_class_to_json(const CircleClass& c);

Json invariant_to_json(const IntervalInvariant& inv);
Json decision_to_json(const ConjugacyDecision& d);
Json circle_decision_to_json(const CircleDecision& d);

Json rotation_to_json(const RotationNumber& rn);

/// Experiment outputs: ordered-JSON summary and the per-trial CSV log
/// (header "trial,parameter,verdict,label,certificate_id").
Json report_to_json(const ExperimentReport& rep);
std::string report_to_csv(const ExperimentReport& rep);

/// Structured invariant diagnostics for the `validate` verb: empty means the
/// payload parses and satisfies every invariant; entries name violations.
struct Diagnostic {
    std::string path;
    std::string message;
};
std::vector<Diagnostic> validate_payload(const std::string& text);

/// Parses text to JSON, mapping syntax errors to ParseError.
Json parse_json_text(const std::string& text);

}  // namespace homeolab
