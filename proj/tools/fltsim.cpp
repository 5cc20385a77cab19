// fltsim: command line front end for the flts library.
//
// Subcommands: eval, prog-eval, simulate, check, distinguish, hm-verify,
// preserve, fragment, random. Output is human-readable by default and a
// stable JSON document with --json; identical invocations produce identical
// bytes. Exit codes: 0 success, 1 a verification subcommand found a
// discrepancy, 2 parse error, 3 validation error, 4 precondition failure
// (CLI11 usage errors keep their own codes).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "flts/characterization.hpp"
#include "flts/errors.hpp"
#include "flts/eval.hpp"
#include "flts/fragments.hpp"
#include "flts/model.hpp"
#include "flts/parse.hpp"
#include "flts/sampler.hpp"
#include "flts/simulation.hpp"
#include "flts/syntax.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace flts;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string relation_text(const CrispRelation& z) {
    std::string out = "{";
    bool first = true;
    for (auto [x, xp] : z.pairs()) {
        if (!first) out += ",";
        first = false;
        out += "(" + z.left()->state_name(x) + "," + z.right()->state_name(xp) + ")";
    }
    return out + "}";
}

json relation_json(const CrispRelation& z) {
    json arr = json::array();
    for (auto [x, xp] : z.pairs())
        arr.push_back({z.left()->state_name(x), z.right()->state_name(xp)});
    return arr;
}

json violation_json(const Violation& v, const Flts& m, const Flts& mp) {
    json j;
    switch (v.kind) {
        case Violation::Kind::Label: j["kind"] = "label"; break;
        case Violation::Kind::Forward: j["kind"] = "forward"; break;
        case Violation::Kind::Backward: j["kind"] = "backward"; break;
    }
    j["x"] = m.state_name(v.x);
    j["xp"] = mp.state_name(v.xp);
    if (v.kind == Violation::Kind::Label) {
        j["prop"] = m.signature().props()[static_cast<std::size_t>(v.prop)];
    } else {
        j["action"] = m.signature().actions()[static_cast<std::size_t>(v.action)];
        j["target"] = (v.kind == Violation::Kind::Forward ? m : mp).state_name(v.target);
    }
    j["degree"] = v.degree.str();
    return j;
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) {
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<Degree> parse_degree_csv(const std::string& csv) {
    std::vector<Degree> out;
    for (const std::string& s : split_csv(csv)) out.push_back(Degree::parse(s));
    return out;
}

// Reads a relation file: either a bare JSON array of [left, right] state-name
// pairs or an object with a "pairs" array (the shape `simulate --json` emits).
CrispRelation load_relation(const std::string& path, const Flts& m, const Flts& mp) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open relation file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    const json* arr = &doc;
    if (doc.is_object() && doc.contains("pairs")) arr = &doc.at("pairs");
    if (!arr->is_array()) throw ValidationError("relation must be a JSON array of pairs");
    CrispRelation z(&m, &mp);
    for (const json& e : *arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw ValidationError("relation entries must be [left-state, right-state] pairs");
        z.add(m.state_index(e[0].get<std::string>()), mp.state_index(e[1].get<std::string>()));
    }
    return z;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file '" + out_path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis toolbox for fuzzy labeled transition systems"};
    app.require_subcommand(1);

    bool as_json = false;
    std::string out_path;
    std::string tnorm_str = "godel";
    std::string fragment_str;
    std::string constants_str;
    bool directed = false;
    std::uint64_t seed = 0;
    std::string model_a, model_b, text_arg, state_x, state_xp, relation_path;
    int oracle_bound = 0;
    int hm_depth = 12;
    int sample_depth = 6;
    int n_samples = 100;
    int n_states = 0;
    double density = 0.5;
    std::string actions_str = "r", props_str = "p", grid_str = "0.25,0.5,0.75,1";

    auto add_common = [&](CLI::App* c) {
        c->add_flag("--json", as_json, "emit a JSON report instead of text");
        c->add_option("--out", out_path, "write the report to a file instead of stdout");
    };
    auto add_tnorm = [&](CLI::App* c) {
        c->add_option("--tnorm", tnorm_str, "t-norm: godel, lukasiewicz, product")
            ->default_str("godel");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate a formula on every state");
    eval->add_option("model", model_a, "model file")->required();
    eval->add_option("formula", text_arg, "formula text")->required();
    add_tnorm(eval);
    add_common(eval);

    CLI::App* prog_eval = app.add_subcommand("prog-eval", "evaluate a program's fuzzy relation");
    prog_eval->add_option("model", model_a, "model file")->required();
    prog_eval->add_option("program", text_arg, "program text")->required();
    add_tnorm(prog_eval);
    add_common(prog_eval);

    CLI::App* simulate = app.add_subcommand("simulate", "largest (directed) simulation");
    simulate->add_option("left", model_a, "left model file")->required();
    simulate->add_option("right", model_b, "right model file")->required();
    simulate->add_flag("--directed", directed, "directed simulation");
    simulate->add_option("--oracle-bound", oracle_bound,
                         "cross-check against the exponential oracle (product-state bound)");
    add_common(simulate);

    CLI::App* check = app.add_subcommand("check", "check a relation file for simulation-hood");
    check->add_option("left", model_a, "left model file")->required();
    check->add_option("right", model_b, "right model file")->required();
    check->add_option("relation", relation_path, "JSON pair list")->required();
    check->add_flag("--directed", directed, "directed simulation");
    add_common(check);

    CLI::App* distinguish =
        app.add_subcommand("distinguish", "distinguishing formula for a state pair");
    distinguish->add_option("left", model_a, "left model file")->required();
    distinguish->add_option("x", state_x, "left state name")->required();
    distinguish->add_option("right", model_b, "right model file")->required();
    distinguish->add_option("xp", state_xp, "right state name")->required();
    distinguish->add_flag("--directed", directed, "directed simulation / fpdK witness");
    add_tnorm(distinguish);
    add_common(distinguish);

    CLI::App* hm_verify = app.add_subcommand(
        "hm-verify", "semantic formula enumeration vs. the fixpoint relation");
    hm_verify->add_option("left", model_a, "left model file")->required();
    hm_verify->add_option("right", model_b, "right model file")->required();
    hm_verify->add_option("--fragment", fragment_str, "fedKDelta or fpdK")
        ->default_str("fedKDelta");
    hm_verify->add_option("--depth", hm_depth, "maximum enumeration rounds")->default_str("12");
    hm_verify->add_option("--constants", constants_str,
                          "comma-separated constant degrees (default: both degree pools)");
    add_tnorm(hm_verify);
    add_common(hm_verify);

    CLI::App* preserve =
        app.add_subcommand("preserve", "sampled preservation test over the largest simulation");
    preserve->add_option("left", model_a, "left model file")->required();
    preserve->add_option("right", model_b, "right model file")->required();
    preserve->add_option("--fragment", fragment_str, "fedKDelta, fedPDL, fpdK, or fpdPDL")
        ->default_str("fedPDL");
    preserve->add_option("--samples", n_samples, "number of sampled formulas")
        ->default_str("100");
    preserve->add_option("--depth", sample_depth, "maximum sampled AST depth")->default_str("6");
    preserve->add_option("--seed", seed, "sampler seed")->default_str("0");
    preserve->add_option("--constants", constants_str,
                         "comma-separated constant degrees (default: both degree pools)");
    add_tnorm(preserve);
    add_common(preserve);

    CLI::App* fragment_cmd = app.add_subcommand("fragment", "classify a formula");
    fragment_cmd->add_option("formula", text_arg, "formula text")->required();
    add_common(fragment_cmd);

    CLI::App* random_cmd = app.add_subcommand("random", "generate a seeded random model");
    random_cmd->add_option("--states", n_states, "number of states")->required();
    random_cmd->add_option("--actions", actions_str, "comma-separated action names")
        ->default_str("r");
    random_cmd->add_option("--props", props_str, "comma-separated proposition names")
        ->default_str("p");
    random_cmd->add_option("--density", density, "transition probability")->default_str("0.5");
    random_cmd->add_option("--grid", grid_str, "comma-separated degree grid")
        ->default_str("0.25,0.5,0.75,1");
    random_cmd->add_option("--seed", seed, "generator seed")->default_str("0");
    add_common(random_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) {
            Flts m = load_flts(model_a);
            TNormKind kind = tnorm_from_name(tnorm_str);
            FormulaPtr f = parse_formula(text_arg);
            FuzzySet s = eval_formula(m, f, kind);
            if (as_json) {
                json j;
                j["formula"] = to_string(*f);
                j["tnorm"] = tnorm_name(kind);
                json vals;
                for (int i = 0; i < m.state_count(); ++i) vals[m.state_name(i)] = s.at(i).str();
                j["values"] = vals;
                emit(out_path, dump(j));
            } else {
                std::string out;
                for (int i = 0; i < m.state_count(); ++i)
                    out += m.state_name(i) + ": " + s.at(i).str() + "\n";
                emit(out_path, out);
            }
        } else if (prog_eval->parsed()) {
            Flts m = load_flts(model_a);
            TNormKind kind = tnorm_from_name(tnorm_str);
            ProgramPtr a = parse_program(text_arg);
            FuzzyRelation r = eval_program(m, a, kind);
            if (as_json) {
                json j;
                j["program"] = to_string(*a);
                j["tnorm"] = tnorm_name(kind);
                json entries = json::array();
                for (int x = 0; x < m.state_count(); ++x)
                    for (int y = 0; y < m.state_count(); ++y)
                        if (!r.at(x, y).is_zero())
                            entries.push_back({{"from", m.state_name(x)},
                                               {"to", m.state_name(y)},
                                               {"degree", r.at(x, y).str()}});
                j["entries"] = entries;
                emit(out_path, dump(j));
            } else {
                std::string out;
                for (int x = 0; x < m.state_count(); ++x)
                    for (int y = 0; y < m.state_count(); ++y)
                        if (!r.at(x, y).is_zero())
                            out += m.state_name(x) + " -> " + m.state_name(y) + ": " +
                                   r.at(x, y).str() + "\n";
                emit(out_path, out);
            }
        } else if (simulate->parsed()) {
            Flts m = load_flts(model_a);
            Flts mp = load_flts(model_b);
            SimKind kind = directed ? SimKind::Directed : SimKind::Forward;
            CrispRelation z =
                directed ? largest_directed_simulation(m, mp) : largest_simulation(m, mp);
            bool oracle_ran = oracle_bound > 0;
            bool oracle_agrees = true;
            CrispRelation oracle(&m, &mp);
            if (oracle_ran) {
                oracle = brute_force_largest(m, mp, kind, oracle_bound);
                oracle_agrees = oracle == z;
            }
            if (as_json) {
                json j;
                j["kind"] = directed ? "directed" : "forward";
                j["pairs"] = relation_json(z);
                if (oracle_ran) {
                    j["oracle_pairs"] = relation_json(oracle);
                    j["oracle_agrees"] = oracle_agrees;
                }
                emit(out_path, dump(j));
            } else {
                std::string out = relation_text(z) + "\n";
                if (oracle_ran)
                    out += oracle_agrees ? "oracle: agrees\n"
                                         : "oracle: MISMATCH " + relation_text(oracle) + "\n";
                emit(out_path, out);
            }
            if (!oracle_agrees) return 1;
        } else if (check->parsed()) {
            Flts m = load_flts(model_a);
            Flts mp = load_flts(model_b);
            CrispRelation z = load_relation(relation_path, m, mp);
            ViolationReport r =
                directed ? check_directed_simulation(m, mp, z) : check_simulation(m, mp, z);
            const char* kind_name = directed ? "directed simulation" : "simulation";
            if (as_json) {
                json j;
                j["kind"] = directed ? "directed" : "forward";
                j["ok"] = r.ok();
                json vs = json::array();
                for (const Violation& v : r.entries) vs.push_back(violation_json(v, m, mp));
                j["violations"] = vs;
                emit(out_path, dump(j));
            } else {
                std::string out;
                if (r.ok()) {
                    out = std::string("ok: the relation is a ") + kind_name + "\n";
                } else {
                    out = std::string("not a ") + kind_name + ":\n";
                    for (const Violation& v : r.entries) out += "  " + to_text(v, m, mp) + "\n";
                }
                emit(out_path, out);
            }
            if (!r.ok()) return 1;
        } else if (distinguish->parsed()) {
            Flts m = load_flts(model_a);
            Flts mp = load_flts(model_b);
            TNormKind tk = tnorm_from_name(tnorm_str);
            SimKind kind = directed ? SimKind::Directed : SimKind::Forward;
            DistinguishResult r =
                distinguishing_formula(m, m.state_index(state_x), mp, mp.state_index(state_xp),
                                       kind, tk);
            if (as_json) {
                json j;
                j["related"] = r.related;
                if (r.related) {
                    j["witness"] = nullptr;
                } else {
                    j["witness"] = to_string(*r.witness);
                    j["fragment"] = fragment_name(r.fragment);
                    j["value_left"] = r.value_left.str();
                    j["value_right"] = r.value_right.str();
                }
                emit(out_path, dump(j));
            } else {
                if (r.related) {
                    emit(out_path, "related\n");
                } else {
                    std::string out = "witness: " + to_string(*r.witness) + "\n";
                    out += "fragment: " + fragment_name(r.fragment) + "\n";
                    out += "left[" + state_x + "]: " + r.value_left.str() + "\n";
                    out += "right[" + state_xp + "]: " + r.value_right.str() + "\n";
                    emit(out_path, out);
                }
            }
        } else if (hm_verify->parsed()) {
            Flts m = load_flts(model_a);
            Flts mp = load_flts(model_b);
            LogicalPreorderParams params;
            params.fragment =
                fragment_str.empty() ? Fragment::FedKDelta : fragment_from_name(fragment_str);
            params.tnorm = tnorm_from_name(tnorm_str);
            params.max_depth = hm_depth;
            params.constants = constants_str.empty() ? pooled_constants(m, mp)
                                                     : parse_degree_csv(constants_str);
            HmResult h = hm_relation(m, mp, params);
            SimKind kind = fragment_sim_kind(params.fragment);
            CrispRelation fix = kind == SimKind::Forward ? largest_simulation(m, mp)
                                                         : largest_directed_simulation(m, mp);
            bool match = h.relation == fix;
            if (as_json) {
                json j;
                j["fragment"] = fragment_name(params.fragment);
                j["kind"] = kind == SimKind::Forward ? "forward" : "directed";
                j["tnorm"] = tnorm_name(params.tnorm);
                j["generators"] = h.generators;
                j["converged"] = h.converged;
                j["depth_reached"] = h.depth_reached;
                j["pairs"] = relation_json(h.relation);
                j["fixpoint_pairs"] = relation_json(fix);
                j["match"] = match;
                emit(out_path, dump(j));
            } else {
                std::string out = "fragment: " + fragment_name(params.fragment) + " (" +
                                  (kind == SimKind::Forward ? "forward" : "directed") +
                                  " simulation)\n";
                out += "tnorm: " + tnorm_name(params.tnorm) + "\n";
                out += "generators: " + std::to_string(h.generators) + "\n";
                out += std::string("converged: ") + (h.converged ? "yes" : "no") + ", depth " +
                       std::to_string(h.depth_reached) + "\n";
                out += "relation: " + relation_text(h.relation) + "\n";
                out += "fixpoint: " + relation_text(fix) + "\n";
                out += std::string("match: ") + (match ? "yes" : "no") + "\n";
                emit(out_path, out);
            }
            if (!match) return 1;
        } else if (preserve->parsed()) {
            Flts m = load_flts(model_a);
            Flts mp = load_flts(model_b);
            LogicalPreorderParams params;
            params.fragment =
                fragment_str.empty() ? Fragment::FedPdl : fragment_from_name(fragment_str);
            params.tnorm = tnorm_from_name(tnorm_str);
            params.max_depth = sample_depth;
            params.constants = constants_str.empty() ? pooled_constants(m, mp)
                                                     : parse_degree_csv(constants_str);
            SimKind kind = fragment_sim_kind(params.fragment);
            CrispRelation z = kind == SimKind::Forward ? largest_simulation(m, mp)
                                                       : largest_directed_simulation(m, mp);
            PreservationReport r = preservation_test(m, mp, z, params, n_samples, seed);
            if (as_json) {
                json j;
                j["fragment"] = fragment_name(params.fragment);
                j["kind"] = kind == SimKind::Forward ? "forward" : "directed";
                j["tnorm"] = tnorm_name(params.tnorm);
                j["pairs"] = relation_json(z);
                j["samples"] = r.samples;
                json vs = json::array();
                for (const PreservationViolation& v : r.violations)
                    vs.push_back({{"formula", to_string(*v.formula)},
                                  {"x", m.state_name(v.x)},
                                  {"xp", mp.state_name(v.xp)},
                                  {"value_left", v.value_left.str()},
                                  {"value_right", v.value_right.str()}});
                j["violations"] = vs;
                j["ok"] = r.ok();
                emit(out_path, dump(j));
            } else {
                std::string out = "fragment: " + fragment_name(params.fragment) + " (" +
                                  (kind == SimKind::Forward ? "forward" : "directed") +
                                  " simulation, " + std::to_string(z.size()) + " pairs)\n";
                out += "samples: " + std::to_string(r.samples) + " (depth <= " +
                       std::to_string(sample_depth) + ", tnorm " + tnorm_name(params.tnorm) +
                       ", seed " + std::to_string(seed) + ")\n";
                out += "violations: " + std::to_string(r.violations.size()) + "\n";
                for (const PreservationViolation& v : r.violations)
                    out += "  " + to_string(*v.formula) + " at (" + m.state_name(v.x) + "," +
                           mp.state_name(v.xp) + "): " + v.value_left.str() + " > " +
                           v.value_right.str() + "\n";
                emit(out_path, out);
            }
            if (!r.ok()) return 1;
        } else if (fragment_cmd->parsed()) {
            FormulaPtr f = parse_formula(text_arg);
            FragmentReport r = classify(*f);
            const std::pair<const char*, bool> memberships[] = {
                {"fedKDelta", r.in_fedkdelta},
                {"fedPDL", r.in_fedpdl},
                {"fpdK", r.in_fpdk},
                {"fpdPDL", r.in_fpdpdl},
            };
            if (as_json) {
                json j;
                j["formula"] = to_string(*f);
                for (auto [name, in] : memberships) j[name] = in;
                emit(out_path, dump(j));
            } else {
                std::string ins, outs;
                for (auto [name, in] : memberships) {
                    std::string& target = in ? ins : outs;
                    if (!target.empty()) target += ", ";
                    target += name;
                }
                std::string out = "formula: " + to_string(*f) + "\n";
                out += "in: " + (ins.empty() ? "(none)" : ins) + "\n";
                out += "not: " + (outs.empty() ? "(none)" : outs) + "\n";
                emit(out_path, out);
            }
        } else if (random_cmd->parsed()) {
            Signature sig(split_csv(actions_str), split_csv(props_str));
            Flts m = random_flts(n_states, sig, density, parse_degree_csv(grid_str), seed);
            emit(out_path, serialize_flts(m));
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 4;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
