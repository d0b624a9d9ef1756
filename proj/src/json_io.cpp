#include "homeolab/json_io.hpp"

#include <sstream>

#include "homeolab/errors.hpp"

namespace homeolab {

namespace {

std::string letter_str(Letter l) { return letter_name(l); }

Json points_to_json(const std::vector<Breakpoint>& pts) {
    Json arr = Json::array();
    for (const auto& p : pts) arr.push_back({p.x.str(), p.y.str()});
    return arr;
}

std::vector<Breakpoint> points_from_json(const Json& arr) {
    if (!arr.is_array()) throw ParseError("breakpoints must be an array");
    std::vector<Breakpoint> pts;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw ParseError("each breakpoint must be a pair of rational strings");
        pts.push_back({Rat::from_string(e[0].get<std::string>()),
                       Rat::from_string(e[1].get<std::string>())});
    }
    return pts;
}

}  // namespace

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::string payload_kind(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("payload must be an object with a string \"kind\"");
    std::string kind = j["kind"].get<std::string>();
    if (kind != "interval" && kind != "lift")
        throw ParseError("unknown payload kind '" + kind + "'");
    return kind;
}

Json map_to_json(const PLMap& f) {
    Json j;
    j["kind"] = "interval";
    j["breakpoints"] = points_to_json(canonicalize(f).points());
    return j;
}

Json lift_to_json(const CircleLift& F) {
    Json j;
    j["kind"] = "lift";
    j["breakpoints"] = points_to_json(canonicalize_lift(F).points());
    return j;
}

PLMap map_from_json(const Json& j) {
    if (payload_kind(j) != "interval")
        throw ParseError("expected kind \"interval\"");
    if (!j.contains("breakpoints")) throw ParseError("missing breakpoints");
    return PLMap(points_from_json(j["breakpoints"]));
}

CircleLift lift_from_json(const Json& j) {
    if (payload_kind(j) != "lift") throw ParseError("expected kind \"lift\"");
    if (!j.contains("breakpoints")) throw ParseError("missing breakpoints");
    CircleLift F(points_from_json(j["breakpoints"]));
    if (!F.is_normalized())
        throw InvariantError("lift must be normalized: y_0 in [0,1)");
    return F;
}

Json unitary_to_json(const GenPermUnitary& u) {
    Json j;
    j["dim"] = u.dim;
    j["perm"] = u.perm;
    Json phases = Json::array();
    for (const auto& a : u.phases) phases.push_back(a.theta().str());
    j["phases"] = phases;
    return j;
}

GenPermUnitary unitary_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("perm") ||
        !j.contains("phases"))
        throw ParseError("operator payload needs dim, perm, phases");
    if (!j["dim"].is_number_unsigned() || !j["perm"].is_array() ||
        !j["phases"].is_array())
        throw ParseError("operator payload has wrong field types");
    GenPermUnitary u;
    u.dim = j["dim"].get<std::size_t>();
    for (const auto& e : j["perm"]) {
        if (!e.is_number_unsigned()) throw ParseError("perm entries must be indices");
        u.perm.push_back(e.get<std::size_t>());
    }
    for (const auto& e : j["phases"]) {
        if (!e.is_string()) throw ParseError("phases must be rational strings");
        u.phases.push_back(Angle(Rat::from_string(e.get<std::string>())));
    }
    u.validate();
    return u;
}

Json spectral_to_json(const SpectralData& sd) {
    Json atoms = Json::array();
    for (const auto& [angle, mult] : sd.atoms)
        atoms.push_back({angle.theta().str(), mult});
    Json j;
    j["atoms"] = atoms;
    j["dimension"] = sd.total_multiplicity();
    return j;
}

Json interval_class_to_json(const IntervalClass& c) {
    Json j;
    switch (c.kind) {
        case IntervalClass::Kind::NonHaarNull:
            j["verdict"] = "non-haar-null";
            j["n"] = c.interior_fixed_points;
            j["first_sign"] = std::string(1, sign_char(c.first_sign));
            break;
        case IntervalClass::Kind::InteriorSegment:
            j["verdict"] = "haar-null";
            j["reason"] = "interior-segment";
            break;
        case IntervalClass::Kind::NonCrossingPoint:
            j["verdict"] = "haar-null";
            j["reason"] = "non-crossing-point";
            break;
    }
    if (c.witness) {
        if (c.witness->is_point())
            j["witness"] = c.witness->a.str();
        else
            j["witness"] = Json::array({c.witness->a.str(), c.witness->b.str()});
    }
    return j;
}

Json rotation_to_json(const RotationNumber& rn) {
    if (rn.rational) return Json(rn.str());
    Json j;
    j["enclosure"] = Json::array({rn.lo.str(), rn.hi.str()});
    return j;
}

Json circle_class_to_json(const CircleClass& c) {
    Json j;
    j["rotation"] = c.rotation ? rotation_to_json(*c.rotation) : Json(nullptr);
    switch (c.kind) {
        case CircleClass::Kind::NonHaarNull:
            j["orbit_count"] = c.periodic_points / c.rotation->q;
            j["crossing"] = true;
            j["verdict"] = "non-haar-null";
            j["orbit_pairs"] = c.orbit_pairs;
            j["periodic_points"] = c.periodic_points;
            break;
        case CircleClass::Kind::InfinitePeriodic:
            j["orbit_count"] = nullptr;
            j["crossing"] = nullptr;
            j["verdict"] = "haar-null";
            j["reason"] = "infinite-periodic";
            break;
        case CircleClass::Kind::NonCrossing:
            j["orbit_count"] = nullptr;
            j["crossing"] = false;
            j["verdict"] = "haar-null";
            j["reason"] = "non-crossing";
            break;
        case CircleClass::Kind::Undetermined:
            j["orbit_count"] = nullptr;
            j["crossing"] = nullptr;
            j["verdict"] = "undetermined";
            break;
    }
    if (c.witness) j["witness"] = c.witness->str();
    return j;
}

Json invariant_to_json(const IntervalInvariant& inv) {
    Json j;
    j["flags"] = Json::array({letter_str(inv.flag0), letter_str(inv.flag1)});
    Json word = Json::array();
    for (const auto& l : inv.word) word.push_back(letter_str(l));
    j["word"] = word;
    return j;
}

Json decision_to_json(const ConjugacyDecision& d) {
    Json j;
    j["verdict"] = d.conjugate ? "conjugate" : "not-conjugate";
    j["word_f"] = invariant_to_json(d.word_f);
    j["word_g"] = invariant_to_json(d.word_g);
    if (d.conjugator) {
        j["conjugator"] = map_to_json(d.conjugator->h);
        Json pts = Json::array();
        for (const auto& x : d.conjugator->checked_points) pts.push_back(x.str());
        j["checked_points"] = pts;
    }
    if (d.mismatch_index) j["mismatch_index"] = *d.mismatch_index;
    if (d.mismatch_what) j["mismatch"] = *d.mismatch_what;
    return j;
}

Json circle_decision_to_json(const CircleDecision& d) {
    Json j;
    switch (d.verdict) {
        case CircleDecision::Verdict::Conjugate: j["verdict"] = "conjugate"; break;
        case CircleDecision::Verdict::NotConjugate: j["verdict"] = "not-conjugate"; break;
        case CircleDecision::Verdict::Undetermined: j["verdict"] = "undetermined"; break;
    }
    j["rotation_f"] = rotation_to_json(d.rot_f);
    j["rotation_g"] = rotation_to_json(d.rot_g);
    auto word_json = [](const CyclicSignWord& w) {
        Json arr = Json::array();
        for (const auto& l : w.letters) arr.push_back(letter_name(l));
        return arr;
    };
    if (d.word_f) j["word_fq"] = word_json(*d.word_f);
    if (d.word_g) j["word_gq"] = word_json(*d.word_g);
    return j;
}

Json report_to_json(const ExperimentReport& rep) {
    Json j;
    j["schema_version"] = 1;
    j["kind"] = rep.kind;
    Json cfg;
    cfg["seed"] = rep.config.seed;
    cfg["trials"] = rep.config.trials;
    cfg["bits"] = rep.config.dyadic_bits;
    cfg["qmax"] = rep.config.q_max;
    cfg["niter"] = rep.config.n_iter;
    cfg["ceiling"] = rep.config.piece_ceiling;
    j["config"] = cfg;
    j["counts"] = Json::object();
    for (const auto& [k, v] : rep.verdict_counts) j["counts"][k] = v;
    j["histogram"] = Json::object();
    for (const auto& [k, v] : rep.histogram) j["histogram"][k] = v;
    j["wilson"] = Json::object();
    for (const auto& [k, ci] : rep.wilson)
        j["wilson"][k] = Json::array({ci.first.str(), ci.second.str()});
    j["non_haar_null"] = rep.non_haar_null;
    if (rep.kind == "circle") {
        j["resolved"] = rep.resolved;
        j["parity_violations"] = rep.parity_violations;
    }
    Json certs = Json::array();
    for (const auto& c : rep.certificates) {
        Json cj;
        cj["id"] = c.id;
        cj["trial"] = c.trial;
        cj["parameter"] = c.parameter;
        cj["reason"] = c.reason;
        cj["witness"] = c.witness;
        certs.push_back(cj);
    }
    j["certificates"] = certs;
    j["csv_schema"] = "homeolab-trials-v1";
    return j;
}

std::string report_to_csv(const ExperimentReport& rep) {
    std::ostringstream out;
    out << "trial,parameter,verdict,label,certificate_id\n";
    for (const auto& r : rep.records) {
        out << r.trial << ',' << r.parameter << ',' << r.verdict << ',' << r.label
            << ',' << (r.certificate_id ? *r.certificate_id : "") << '\n';
    }
    return out.str();
}

std::vector<Diagnostic> validate_payload(const std::string& text) {
    std::vector<Diagnostic> diags;
    Json j;
    try {
        j = parse_json_text(text);
    } catch (const ParseError& e) {
        diags.push_back({"$", e.what()});
        return diags;
    }
    if (!j.is_object()) {
        diags.push_back({"$", "payload must be a JSON object"});
        return diags;
    }
    if (j.contains("dim") || j.contains("perm")) {
        try {
            unitary_from_json(j);
        } catch (const Error& e) {
            diags.push_back({"$", e.what()});
        }
        return diags;
    }
    std::string kind;
    try {
        kind = payload_kind(j);
    } catch (const Error& e) {
        diags.push_back({"$.kind", e.what()});
        return diags;
    }
    if (!j.contains("breakpoints")) {
        diags.push_back({"$.breakpoints", "missing breakpoints"});
        return diags;
    }
    std::vector<Breakpoint> pts;
    try {
        pts = points_from_json(j["breakpoints"]);
    } catch (const Error& e) {
        diags.push_back({"$.breakpoints", e.what()});
        return diags;
    }
    // Re-run the invariants one by one so each violation is named.
    auto check = [&](bool ok, const std::string& msg) {
        if (!ok) diags.push_back({"$.breakpoints", msg});
    };
    check(pts.size() >= 2, "need at least two breakpoints");
    if (pts.size() >= 2) {
        check(pts.front().x == Rat(0), "x_0 must be 0");
        check(pts.back().x == Rat(1), "x_m must be 1");
        bool x_mono = true, y_mono = true;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            x_mono &= pts[i].x < pts[i + 1].x;
            y_mono &= pts[i].y < pts[i + 1].y;
        }
        check(x_mono, "abscissae must be strictly increasing");
        check(y_mono, "ordinates must be strictly increasing");
        if (kind == "interval") {
            check(pts.front().y == Rat(0) && pts.back().y == Rat(1),
                  "interval map must fix 0 and 1");
        } else {
            check(pts.back().y == pts.front().y + Rat(1), "y_m must equal y_0 + 1");
            check(pts.front().y >= Rat(0) && pts.front().y < Rat(1),
                  "lift must be normalized: y_0 in [0,1)");
        }
    }
    return diags;
}

}  // namespace homeolab
