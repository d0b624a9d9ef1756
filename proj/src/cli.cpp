#include "homeolab/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "homeolab/json_io.hpp"

namespace homeolab::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCeiling = 3;
constexpr int kExitUndetermined = 4;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw ParseError("I/O error while reading '" + path + "'");
    return ss.str();
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::size_t default_ceiling() {
    if (const char* env = std::getenv("HOMEOLAB_CEILING")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw ParseError("HOMEOLAB_CEILING must be a positive integer");
    }
    return kDefaultPieceCeiling;
}

Sign parse_sign(const std::string& s) {
    if (s == "+" || s == "pos") return Sign::Pos;
    if (s == "-" || s == "neg") return Sign::Neg;
    throw ParseError("sign must be one of +, -, pos, neg");
}

struct Options {
    std::string map_file, lift_file, f_file, g_file, op_file, out_file, file;
    std::size_t trials = 10000;
    std::uint64_t seed = 0;
    unsigned bits = 32;
    unsigned q_max = 12;
    unsigned n_iter = 1000;
    unsigned workers = 1;
    bool csv = false;
    bool strict = false;
    std::size_t ceiling = 0;  // resolved after parse (flag > env > default)
    long n = -1;
    std::string sign_text = "+";
    long p = 0, q = 1, k = 1;
    std::size_t index = 0;
    long power = 1;
    long shift_k = 0, shift_m = 0;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact conjugacy-class toolkit for PL interval and circle "
                 "homeomorphisms and generalized permutation unitaries"};
    app.require_subcommand(1);
    Options o;

    auto add_ceiling = [&](CLI::App* cmd) {
        cmd->add_option("--ceiling", o.ceiling,
                        "piece-count ceiling (default 10^6, env HOMEOLAB_CEILING)");
    };

    CLI::App* ci = app.add_subcommand("classify-interval",
                                      "conjugacy class of an interval map");
    ci->add_option("--map", o.map_file, "interval map JSON file")->required();
    add_ceiling(ci);

    CLI::App* cc = app.add_subcommand("classify-circle",
                                      "conjugacy class of a circle map");
    cc->add_option("--lift", o.lift_file, "lift JSON file")->required();
    cc->add_option("--qmax", o.q_max, "rational-rotation search bound");
    cc->add_option("--niter", o.n_iter, "enclosure iterations");
    cc->add_flag("--strict", o.strict, "exit 4 on undetermined verdicts");
    add_ceiling(cc);

    CLI::App* cj = app.add_subcommand("conjugate",
                                      "decide conjugacy of two maps of the same kind");
    cj->add_option("--f", o.f_file, "first map JSON file")->required();
    cj->add_option("--g", o.g_file, "second map JSON file")->required();
    cj->add_option("--qmax", o.q_max, "rational-rotation search bound (circle)");
    cj->add_flag("--strict", o.strict, "exit 4 on undetermined verdicts");
    add_ceiling(cj);

    CLI::App* rn = app.add_subcommand("rotnum", "rotation number of a lift");
    rn->add_option("--lift", o.lift_file, "lift JSON file")->required();
    rn->add_option("--qmax", o.q_max, "rational-rotation search bound");
    rn->add_option("--niter", o.n_iter, "enclosure iterations");
    rn->add_flag("--strict", o.strict, "exit 4 when only an enclosure is found");
    add_ceiling(rn);

    CLI::App* rp = app.add_subcommand("represent", "canonical class representatives");
    rp->add_option("--n", o.n, "interval: interior fixed point count");
    rp->add_option("--sign", o.sign_text, "interval: first gap sign (+/-)");
    rp->add_option("--p", o.p, "circle: rotation numerator");
    rp->add_option("--q", o.q, "circle: rotation denominator");
    rp->add_option("--k", o.k, "circle: orbit pair count");
    rp->add_option("--out", o.out_file, "write payload to this file");

    CLI::App* co = app.add_subcommand("collapse",
                                      "remove one orbit pair (Claim 4.6 map)");
    co->add_option("--lift", o.lift_file, "lift JSON file")->required();
    co->add_option("--qmax", o.q_max, "rational-rotation search bound");
    co->add_option("--niter", o.n_iter, "enclosure iterations");
    add_ceiling(co);

    CLI::App* si = app.add_subcommand("sample-interval",
                                      "tent-measure Monte Carlo around g");
    si->add_option("--g", o.g_file, "translate map JSON file")->required();
    si->add_option("--trials", o.trials, "trial count")->required();
    si->add_option("--seed", o.seed, "master seed")->required();
    si->add_option("--bits", o.bits, "dyadic parameter bits (>= 8)");
    si->add_option("--workers", o.workers, "worker threads");
    si->add_flag("--csv", o.csv, "emit the per-trial CSV log instead of JSON");
    add_ceiling(si);

    CLI::App* sc = app.add_subcommand("sample-circle",
                                      "rotation-measure Monte Carlo around f");
    sc->add_option("--lift", o.lift_file, "lift JSON file")->required();
    sc->add_option("--trials", o.trials, "trial count")->required();
    sc->add_option("--seed", o.seed, "master seed")->required();
    sc->add_option("--bits", o.bits, "dyadic parameter bits (>= 8)");
    sc->add_option("--qmax", o.q_max, "rational-rotation search bound");
    sc->add_option("--niter", o.n_iter, "enclosure iterations");
    sc->add_option("--workers", o.workers, "worker threads");
    sc->add_flag("--csv", o.csv, "emit the per-trial CSV log instead of JSON");
    add_ceiling(sc);

    CLI::App* sp = app.add_subcommand("spectral",
                                      "spectral data of a generalized permutation unitary");
    sp->add_option("--op", o.op_file, "operator JSON file");
    sp->add_option("--shift-k", o.shift_k, "multishift: number of cycles");
    sp->add_option("--shift-m", o.shift_m, "multishift: cycle length");

    CLI::App* bo = app.add_subcommand("bochner", "Bochner coefficient two ways");
    bo->add_option("--op", o.op_file, "operator JSON file")->required();
    bo->add_option("--index", o.index, "basis index")->required();
    bo->add_option("--n", o.power, "power n")->required();

    CLI::App* va = app.add_subcommand("validate", "full invariant report for a payload");
    va->add_option("--file", o.file, "payload JSON file")->required();

    std::vector<const char*> argv;
    argv.push_back("homeolab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return kExitInput;
    }

    try {
        if (o.ceiling == 0) o.ceiling = default_ceiling();

        if (ci->parsed()) {
            PLMap f = map_from_json(parse_json_text(slurp(o.map_file)));
            emit(out, interval_class_to_json(classify(f)));
            return kExitOk;
        }

        if (cc->parsed()) {
            CircleLift F = lift_from_json(parse_json_text(slurp(o.lift_file)));
            CircleClass c = classify_circle(F, o.q_max, o.n_iter, o.ceiling);
            emit(out, circle_class_to_json(c));
            return (o.strict && c.kind == CircleClass::Kind::Undetermined)
                       ? kExitUndetermined
                       : kExitOk;
        }

        if (cj->parsed()) {
            Json jf = parse_json_text(slurp(o.f_file));
            Json jg = parse_json_text(slurp(o.g_file));
            if (payload_kind(jf) != payload_kind(jg))
                throw ParseError("conjugate: both payloads must have the same kind");
            if (payload_kind(jf) == "interval") {
                ConjugacyDecision d =
                    conjugate_decision(map_from_json(jf), map_from_json(jg));
                emit(out, decision_to_json(d));
                return kExitOk;
            }
            CircleDecision d = conjugate_decision_circle(
                lift_from_json(jf), lift_from_json(jg), o.q_max, o.ceiling);
            emit(out, circle_decision_to_json(d));
            return (o.strict &&
                    d.verdict == CircleDecision::Verdict::Undetermined)
                       ? kExitUndetermined
                       : kExitOk;
        }

        if (rn->parsed()) {
            CircleLift F = lift_from_json(parse_json_text(slurp(o.lift_file)));
            auto [rot, st] = rotation_number(F, o.q_max, o.n_iter, o.ceiling);
            Json j;
            if (rot.rational) {
                j["rational"] = rot.str();
                j["periodic_points"] =
                    st->degenerate ? Json(nullptr) : Json(st->points.size());
                j["degenerate"] = st->degenerate;
            } else {
                j["enclosure"] = Json::array({rot.lo.str(), rot.hi.str()});
            }
            emit(out, j);
            return (o.strict && !rot.rational) ? kExitUndetermined : kExitOk;
        }

        if (rp->parsed()) {
            Json payload;
            if (o.n >= 0) {
                payload = map_to_json(
                    representative(static_cast<std::size_t>(o.n), parse_sign(o.sign_text)));
            } else {
                payload = lift_to_json(representative_circle(o.p, o.q, o.k));
            }
            if (!o.out_file.empty()) {
                std::ofstream f(o.out_file, std::ios::binary);
                if (!f) throw ParseError("cannot write file '" + o.out_file + "'");
                f << payload.dump(2) << "\n";
            }
            emit(out, payload);
            return kExitOk;
        }

        if (co->parsed()) {
            CircleLift F = lift_from_json(parse_json_text(slurp(o.lift_file)));
            auto [rot, st] = rotation_number(F, o.q_max, o.n_iter, o.ceiling);
            if (!rot.rational)
                throw DomainError("collapse: rotation number undetermined at this qmax");
            auto [h, collapsed] = orbit_collapse(F, *st, o.ceiling);
            Json j;
            j["h"] = lift_to_json(h);
            j["collapsed"] = lift_to_json(collapsed);
            j["class"] = circle_class_to_json(
                classify_circle(collapsed, o.q_max, o.n_iter, o.ceiling));
            emit(out, j);
            return kExitOk;
        }

        if (si->parsed()) {
            PLMap g = map_from_json(parse_json_text(slurp(o.g_file)));
            SamplerConfig cfg;
            cfg.seed = o.seed;
            cfg.trials = o.trials;
            cfg.dyadic_bits = o.bits;
            cfg.workers = o.workers;
            cfg.piece_ceiling = o.ceiling;
            ExperimentReport rep = experiment_interval(g, cfg);
            if (o.csv) out << report_to_csv(rep);
            else emit(out, report_to_json(rep));
            return kExitOk;
        }

        if (sc->parsed()) {
            CircleLift f = lift_from_json(parse_json_text(slurp(o.lift_file)));
            SamplerConfig cfg;
            cfg.seed = o.seed;
            cfg.trials = o.trials;
            cfg.dyadic_bits = o.bits;
            cfg.q_max = o.q_max;
            cfg.n_iter = o.n_iter;
            cfg.workers = o.workers;
            cfg.piece_ceiling = o.ceiling;
            ExperimentReport rep = experiment_circle(f, cfg);
            if (o.csv) out << report_to_csv(rep);
            else emit(out, report_to_json(rep));
            return kExitOk;
        }

        if (sp->parsed()) {
            GenPermUnitary u;
            if (!o.op_file.empty()) {
                u = unitary_from_json(parse_json_text(slurp(o.op_file)));
            } else if (o.shift_k > 0 && o.shift_m > 0) {
                u = multishift_truncated(static_cast<std::size_t>(o.shift_k),
                                         static_cast<std::size_t>(o.shift_m));
            } else {
                throw ParseError("spectral: need --op or --shift-k/--shift-m");
            }
            emit(out, spectral_to_json(spectral_data(u)));
            return kExitOk;
        }

        if (bo->parsed()) {
            GenPermUnitary u = unitary_from_json(parse_json_text(slurp(o.op_file)));
            auto direct = bochner_coeff(u, o.index, o.power);
            auto atomic = bochner_coeff_spectral(u, o.index, o.power);
            Json j;
            j["direct"] = direct ? Json(direct->theta().str()) : Json(nullptr);
            j["atomic_sum"] = atomic ? Json(atomic->theta().str()) : Json(nullptr);
            j["agree"] = (direct == atomic);
            emit(out, j);
            return kExitOk;
        }

        if (va->parsed()) {
            std::string text = slurp(o.file);
            std::vector<Diagnostic> diags = validate_payload(text);
            Json j;
            j["valid"] = diags.empty();
            Json list = Json::array();
            for (const auto& d : diags) {
                Json e;
                e["path"] = d.path;
                e["message"] = d.message;
                list.push_back(e);
            }
            j["diagnostics"] = list;
            emit(out, j);
            return diags.empty() ? kExitOk : kExitInput;
        }
    } catch (const ResourceLimitError& e) {
        err << "resource ceiling: " << e.what() << "\n";
        return kExitCeiling;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    err << "no subcommand executed\n";
    return kExitInput;
}

}  // namespace homeolab::cli
