#include "flts/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "flts/errors.hpp"
#include "flts/rng.hpp"
#include "json.hpp"

namespace flts {

namespace {

using json = nlohmann::ordered_json;

const Degree kZero{};

// Action and prop names must be identifiers so that formula text can refer to
// them; "D" is reserved by the formula syntax.
bool is_identifier(std::string_view s) {
    if (s.empty() || s == "D") return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin() + 1, s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

void check_name_list(const std::vector<std::string>& names, const char* what) {
    std::set<std::string_view> seen;
    for (const auto& n : names) {
        if (!is_identifier(n))
            throw ValidationError(std::string("invalid ") + what + " name '" + n + "'");
        if (!seen.insert(n).second)
            throw ValidationError(std::string("duplicate ") + what + " '" + n + "'");
    }
}

}  // namespace

Signature::Signature(std::vector<std::string> actions, std::vector<std::string> props)
    : actions_(std::move(actions)), props_(std::move(props)) {
    check_name_list(actions_, "action");
    check_name_list(props_, "prop");
}

int Signature::action_index(std::string_view name) const {
    auto it = std::find(actions_.begin(), actions_.end(), name);
    return it == actions_.end() ? -1 : static_cast<int>(it - actions_.begin());
}

int Signature::prop_index(std::string_view name) const {
    auto it = std::find(props_.begin(), props_.end(), name);
    return it == props_.end() ? -1 : static_cast<int>(it - props_.begin());
}

Flts::Flts(Signature signature, std::vector<std::string> states,
           const std::vector<TransitionSpec>& transitions,
           const std::map<std::string, std::map<std::string, Degree>>& labels)
    : sig_(std::move(signature)), states_(std::move(states)) {
    if (states_.empty()) throw ValidationError("model has no states");
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (states_[i].empty()) throw ValidationError("empty state name");
        if (!state_index_.emplace(states_[i], static_cast<int>(i)).second)
            throw ValidationError("duplicate state '" + states_[i] + "'");
    }

    const int n_actions = static_cast<int>(sig_.actions().size());
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& t : transitions) {
        int from = try_state_index(t.from);
        if (from < 0) throw ValidationError("transition references unknown state '" + t.from + "'");
        int to = try_state_index(t.to);
        if (to < 0) throw ValidationError("transition references unknown state '" + t.to + "'");
        int action = sig_.action_index(t.action);
        if (action < 0) throw ValidationError("transition references unknown action '" + t.action + "'");
        if (!seen.emplace(from, action, to).second)
            throw ValidationError("duplicate transition " + t.from + " -" + t.action + "-> " + t.to);
        if (!t.degree.is_zero()) trans_.push_back({from, action, to, t.degree});
    }
    std::sort(trans_.begin(), trans_.end(), [](const Transition& a, const Transition& b) {
        return std::tie(a.from, a.action, a.to) < std::tie(b.from, b.action, b.to);
    });

    // Group offsets: trans_ is sorted, so each (from, action) bucket is contiguous.
    offsets_.assign(static_cast<std::size_t>(state_count()) * n_actions + 1, 0);
    for (const auto& t : trans_) ++offsets_[static_cast<std::size_t>(t.from) * n_actions + t.action + 1];
    for (std::size_t k = 1; k < offsets_.size(); ++k) offsets_[k] += offsets_[k - 1];

    labels_.assign(states_.size(), std::vector<Degree>(sig_.props().size()));
    for (const auto& [state, props] : labels) {
        int s = try_state_index(state);
        if (s < 0) throw ValidationError("label references unknown state '" + state + "'");
        for (const auto& [prop, degree] : props) {
            int p = sig_.prop_index(prop);
            if (p < 0) throw ValidationError("label references unknown prop '" + prop + "'");
            labels_[s][p] = degree;
        }
    }
}

int Flts::state_index(std::string_view name) const {
    int i = try_state_index(name);
    if (i < 0) throw ValidationError("unknown state '" + std::string(name) + "'");
    return i;
}

int Flts::try_state_index(std::string_view name) const {
    auto it = state_index_.find(name);
    return it == state_index_.end() ? -1 : it->second;
}

std::span<const Transition> Flts::successors(int from, int action) const {
    std::size_t k = static_cast<std::size_t>(from) * sig_.actions().size() + action;
    return {trans_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
}

const Degree& Flts::transition(int from, int action, int to) const {
    for (const Transition& t : successors(from, action))
        if (t.to == to) return t.degree;
    return kZero;
}

const Degree& Flts::label(int state, int prop) const {
    return labels_[state][prop];
}

bool operator==(const Flts& a, const Flts& b) {
    if (!(a.sig_ == b.sig_) || a.states_ != b.states_ || a.labels_ != b.labels_) return false;
    if (a.trans_.size() != b.trans_.size()) return false;
    for (std::size_t i = 0; i < a.trans_.size(); ++i) {
        const Transition &s = a.trans_[i], &t = b.trans_[i];
        if (std::tie(s.from, s.action, s.to) != std::tie(t.from, t.action, t.to) ||
            !(s.degree == t.degree))
            return false;
    }
    return true;
}

namespace {

std::vector<std::string> string_list(const json& j, const char* key) {
    if (!j.contains(key)) throw ValidationError(std::string("model is missing '") + key + "'");
    const json& arr = j.at(key);
    if (!arr.is_array()) throw ValidationError(std::string("'") + key + "' must be an array");
    std::vector<std::string> out;
    for (const json& e : arr) {
        if (!e.is_string()) throw ValidationError(std::string("'") + key + "' must contain strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::string degree_string(const json& j, const std::string& where) {
    if (!j.is_string())
        throw ValidationError("degree in " + where + " must be a string literal like \"0.5\" or \"1/2\"");
    return j.get<std::string>();
}

}  // namespace

Flts parse_flts(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ValidationError("model document must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "actions" && key != "props" && key != "states" && key != "transitions" &&
            key != "labels")
            throw ValidationError("unknown top-level key '" + key + "' in model");
    }

    Signature sig(string_list(doc, "actions"), string_list(doc, "props"));
    std::vector<std::string> states = string_list(doc, "states");

    std::vector<TransitionSpec> transitions;
    if (doc.contains("transitions")) {
        const json& arr = doc.at("transitions");
        if (!arr.is_array()) throw ValidationError("'transitions' must be an array");
        for (const json& t : arr) {
            if (!t.is_object()) throw ValidationError("each transition must be an object");
            for (const auto& [key, _] : t.items())
                if (key != "from" && key != "action" && key != "to" && key != "degree")
                    throw ValidationError("unknown key '" + key + "' in transition");
            for (const char* key : {"from", "action", "to", "degree"}) {
                if (!t.contains(key))
                    throw ValidationError(std::string("transition is missing '") + key + "'");
                if (!t.at(key).is_string())
                    throw ValidationError(std::string("transition key '") + key +
                                          "' must be a string");
            }
            TransitionSpec spec;
            spec.from = t.at("from").get<std::string>();
            spec.action = t.at("action").get<std::string>();
            spec.to = t.at("to").get<std::string>();
            std::string where = spec.from + " -" + spec.action + "-> " + spec.to;
            try {
                spec.degree = Degree::parse(degree_string(t.at("degree"), "transition " + where));
            } catch (const ValidationError& e) {
                throw ValidationError("transition " + where + ": " + e.what());
            }
            transitions.push_back(std::move(spec));
        }
    }

    std::map<std::string, std::map<std::string, Degree>> labels;
    if (doc.contains("labels")) {
        const json& obj = doc.at("labels");
        if (!obj.is_object()) throw ValidationError("'labels' must be an object");
        for (const auto& [state, props] : obj.items()) {
            if (!props.is_object())
                throw ValidationError("labels of '" + state + "' must be an object");
            for (const auto& [prop, deg] : props.items()) {
                try {
                    labels[state][prop] =
                        Degree::parse(degree_string(deg, "label " + state + "." + prop));
                } catch (const ValidationError& e) {
                    throw ValidationError("label " + state + "." + prop + ": " + e.what());
                }
            }
        }
    }

    return Flts(std::move(sig), std::move(states), transitions, labels);
}

Flts load_flts(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_flts(buf.str());
}

std::string serialize_flts(const Flts& m) {
    const Signature& sig = m.signature();
    json doc;
    doc["actions"] = sig.actions();
    doc["props"] = sig.props();
    doc["states"] = m.states();
    json trans = json::array();
    for (const Transition& t : m.transitions()) {
        trans.push_back({{"from", m.state_name(t.from)},
                         {"action", sig.actions()[t.action]},
                         {"to", m.state_name(t.to)},
                         {"degree", t.degree.str()}});
    }
    doc["transitions"] = std::move(trans);
    json labels = json::object();
    for (int s = 0; s < m.state_count(); ++s) {
        json entry = json::object();
        for (std::size_t p = 0; p < sig.props().size(); ++p) {
            const Degree& d = m.label(s, static_cast<int>(p));
            if (!d.is_zero()) entry[sig.props()[p]] = d.str();
        }
        if (!entry.empty()) labels[m.state_name(s)] = std::move(entry);
    }
    doc["labels"] = std::move(labels);
    return doc.dump(2) + "\n";
}

Flts random_flts(int n_states, const Signature& signature, double density,
                 const std::vector<Degree>& degree_grid, std::uint64_t seed) {
    if (n_states < 1) throw ValidationError("random model needs at least one state");
    if (!(density >= 0.0 && density <= 1.0))
        throw ValidationError("density must lie in [0,1]");
    if (degree_grid.empty()) throw ValidationError("degree grid must be non-empty");
    for (const Degree& d : degree_grid)
        if (d.is_zero())
            throw ValidationError("degree grid must contain only positive degrees");

    Rng rng(seed);
    std::vector<std::string> states;
    for (int i = 0; i < n_states; ++i) states.push_back("s" + std::to_string(i));

    // Fixed draw order (transitions by from/action/to, then labels by
    // state/prop) is part of the determinism contract.
    std::vector<TransitionSpec> transitions;
    for (const auto& s : states)
        for (const auto& a : signature.actions())
            for (const auto& t : states)
                if (rng.chance(density))
                    transitions.push_back({s, a, t, rng.pick(degree_grid)});

    std::map<std::string, std::map<std::string, Degree>> labels;
    for (const auto& s : states)
        for (const auto& p : signature.props()) {
            std::uint64_t i = rng.below(degree_grid.size() + 1);
            if (i > 0) labels[s][p] = degree_grid[i - 1];
        }

    return Flts(signature, std::move(states), transitions, labels);
}

std::vector<Degree> degree_pool(const Flts& m) {
    std::set<Degree> pool{Degree::zero(), Degree::one()};
    for (const Transition& t : m.transitions()) pool.insert(t.degree);
    for (int s = 0; s < m.state_count(); ++s)
        for (std::size_t p = 0; p < m.signature().props().size(); ++p) {
            const Degree& d = m.label(s, static_cast<int>(p));
            if (!d.is_zero()) pool.insert(d);
        }
    return {pool.begin(), pool.end()};
}

}  // namespace flts
