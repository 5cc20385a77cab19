#ifndef FLTS_MODEL_HPP
#define FLTS_MODEL_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flts/degree.hpp"

namespace flts {

// Ordered action and proposition alphabets. Two models can only be compared
// when they carry equal signatures (same names, same order).
class Signature {
public:
    Signature(std::vector<std::string> actions, std::vector<std::string> props);

    const std::vector<std::string>& actions() const { return actions_; }
    const std::vector<std::string>& props() const { return props_; }

    int action_index(std::string_view name) const;  // -1 if unknown
    int prop_index(std::string_view name) const;

    friend bool operator==(const Signature& a, const Signature& b) {
        return a.actions_ == b.actions_ && a.props_ == b.props_;
    }

private:
    std::vector<std::string> actions_, props_;
};

// A transition with resolved indices; degree is always positive (zero-degree
// transitions are simply absent).
struct Transition {
    int from, action, to;
    Degree degree;
};

// Name-based transition used when constructing a model.
struct TransitionSpec {
    std::string from, action, to;
    Degree degree;
};

// A finite fuzzy labeled transition system: states, a fuzzy transition
// function per action, and a fuzzy proposition labeling per state. Immutable
// after construction; all degrees are exact rationals.
class Flts {
public:
    // Validates everything: non-empty unique state list, known names, degrees
    // in range, no duplicate (from, action, to) triple. Zero-degree transitions
    // and labels are accepted and dropped (they denote absence).
    Flts(Signature signature, std::vector<std::string> states,
         const std::vector<TransitionSpec>& transitions,
         const std::map<std::string, std::map<std::string, Degree>>& labels);

    const Signature& signature() const { return sig_; }

    int state_count() const { return static_cast<int>(states_.size()); }
    const std::vector<std::string>& states() const { return states_; }
    const std::string& state_name(int i) const { return states_[static_cast<std::size_t>(i)]; }
    // Throws ValidationError naming the state if unknown.
    int state_index(std::string_view name) const;
    int try_state_index(std::string_view name) const;  // -1 if unknown

    // Transition degree, zero when absent.
    const Degree& transition(int from, int action, int to) const;
    // Positive outgoing transitions of `from` under `action`, sorted by target.
    std::span<const Transition> successors(int from, int action) const;
    // All positive transitions, sorted by (from, action, to).
    const std::vector<Transition>& transitions() const { return trans_; }

    // Label degree of proposition `prop` at `state`, zero when absent.
    const Degree& label(int state, int prop) const;

    friend bool operator==(const Flts& a, const Flts& b);

private:
    Signature sig_;
    std::vector<std::string> states_;
    std::map<std::string, int, std::less<>> state_index_;
    std::vector<Transition> trans_;        // sorted by (from, action, to)
    std::vector<std::size_t> offsets_;     // group offsets into trans_, key = from*|A|+action
    std::vector<std::vector<Degree>> labels_;  // [state][prop]
};

// Reads a model from its JSON text. Malformed JSON raises ParseError (with the
// position reported by the JSON parser); structural problems raise
// ValidationError naming the offending state/action/prop/degree.
Flts parse_flts(const std::string& json_text);

// Reads a model from a file path.
Flts load_flts(const std::string& path);

// Canonical JSON text: fixed key order, transitions sorted by
// (from, action, to), labels restricted to positive degrees.
// parse_flts(serialize_flts(m)) == m, and serialization of a loaded canonical
// document reproduces it byte for byte.
std::string serialize_flts(const Flts& m);

// Seeded random model over the given signature: states s0..s{n-1}; each
// (from, action, to) transition is present with probability `density` and
// then draws its degree uniformly from `degree_grid`; each (state, prop)
// label is uniform over `degree_grid` plus "absent". The grid must be
// non-empty with degrees in (0,1]. Identical arguments give identical models
// on every platform.
Flts random_flts(int n_states, const Signature& signature, double density,
                 const std::vector<Degree>& degree_grid, std::uint64_t seed);

// All degrees occurring in transitions or labels of m, plus 0 and 1,
// ascending and duplicate-free.
std::vector<Degree> degree_pool(const Flts& m);

}  // namespace flts

#endif
