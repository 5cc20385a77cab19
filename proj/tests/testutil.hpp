#ifndef FLTS_TESTS_TESTUTIL_HPP
#define FLTS_TESTS_TESTUTIL_HPP

#include <cstdlib>
#include <string>
#include <vector>

#include "flts/algebra.hpp"
#include "flts/eval.hpp"
#include "flts/model.hpp"
#include "flts/rng.hpp"

namespace testutil {

// The two worked model pairs used throughout: a four-state system against a
// two-state one (largest simulation {(u2,v1),(u3,v1),(u4,v2)}, largest
// directed simulation empty), and a variant pair whose largest directed
// simulation is {u2,u3,u4} x {v1,v2}.

inline flts::Flts pair1_left() {
    using flts::Degree;
    return flts::Flts(
        flts::Signature({"r"}, {"p"}), {"u1", "u2", "u3", "u4"},
        {{"u1", "r", "u2", Degree::parse("0.6")},
         {"u2", "r", "u3", Degree::parse("0.5")},
         {"u2", "r", "u4", Degree::parse("0.6")},
         {"u3", "r", "u4", Degree::parse("0.4")},
         {"u4", "r", "u2", Degree::parse("0.5")}},
        {{"u1", {{"p", Degree::parse("0.7")}}},
         {"u2", {{"p", Degree::parse("0.7")}}},
         {"u3", {{"p", Degree::parse("0.6")}}},
         {"u4", {{"p", Degree::parse("0.8")}}}});
}

inline flts::Flts pair1_right() {
    using flts::Degree;
    return flts::Flts(flts::Signature({"r"}, {"p"}), {"v1", "v2"},
                      {{"v1", "r", "v1", Degree::parse("0.5")},
                       {"v1", "r", "v2", Degree::parse("0.6")},
                       {"v2", "r", "v1", Degree::parse("0.5")}},
                      {{"v1", {{"p", Degree::parse("0.7")}}},
                       {"v2", {{"p", Degree::parse("0.8")}}}});
}

inline flts::Flts pair2_left() {
    using flts::Degree;
    return flts::Flts(
        flts::Signature({"r"}, {"p"}), {"u1", "u2", "u3", "u4"},
        {{"u1", "r", "u2", Degree::parse("0.7")},
         {"u2", "r", "u3", Degree::parse("0.5")},
         {"u2", "r", "u4", Degree::parse("0.6")},
         {"u3", "r", "u4", Degree::parse("0.6")},
         {"u4", "r", "u2", Degree::parse("0.6")}},
        {{"u1", {{"p", Degree::parse("0.7")}}},
         {"u2", {{"p", Degree::parse("0.5")}}},
         {"u3", {{"p", Degree::parse("0.6")}}},
         {"u4", {{"p", Degree::parse("0.7")}}}});
}

inline flts::Flts pair2_right() {
    using flts::Degree;
    return flts::Flts(flts::Signature({"r"}, {"p"}), {"v1", "v2"},
                      {{"v1", "r", "v1", Degree::parse("0.6")},
                       {"v1", "r", "v2", Degree::parse("0.5")},
                       {"v2", "r", "v1", Degree::parse("0.6")}},
                      {{"v1", {{"p", Degree::parse("0.7")}}},
                       {"v2", {{"p", Degree::parse("0.8")}}}});
}

inline std::string data_dir() {
    const char* d = std::getenv("FLTS_DATA_DIR");
    return d ? d : "data";
}

// Independent reference for the Kleene star: the supremum over all paths is
// attained on simple paths (dropping a cycle never lowers a path's value), so
// enumerate those by depth-first search. star(x,x) is 1 via the empty path.
inline flts::Degree star_path_oracle(const flts::FuzzyRelation& base, int x, int y,
                                     flts::TNormKind kind) {
    using flts::Degree;
    const int n = base.model->state_count();
    if (x == y) return Degree::one();
    Degree best = Degree::zero();
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    visited[static_cast<std::size_t>(x)] = 1;
    // Explicit DFS over (state, accumulated value) to keep this a plain loop.
    struct Frame {
        int state;
        int next = 0;
        Degree acc;
    };
    std::vector<Frame> frames{{x, 0, Degree::one()}};
    while (!frames.empty()) {
        Frame& f = frames.back();
        if (f.next >= n) {
            visited[static_cast<std::size_t>(f.state)] = 0;
            frames.pop_back();
            continue;
        }
        const int z = f.next++;
        if (visited[static_cast<std::size_t>(z)]) continue;
        const Degree& step = base.at(f.state, z);
        if (step.is_zero()) continue;
        Degree val = flts::tnorm(kind, f.acc, step);
        if (val <= best) continue;  // monotone: extending can only lower it
        if (z == y) {
            best = val;
            continue;
        }
        visited[static_cast<std::size_t>(z)] = 1;
        frames.push_back({z, 0, val});
    }
    return best;
}

// A uniformly drawn exact rational in [0,1] with denominator <= max_den.
inline flts::Degree random_degree(flts::Rng& rng, unsigned long max_den = 24) {
    unsigned long den = 1 + rng.below(max_den);
    long num = static_cast<long>(rng.below(den + 1));
    return flts::Degree::ratio(num, den);
}

inline std::vector<flts::Degree> grid4() {
    return {flts::Degree::parse("0.25"), flts::Degree::parse("0.5"),
            flts::Degree::parse("0.75"), flts::Degree::parse("1")};
}

inline std::vector<flts::Degree> grid5() {
    return {flts::Degree::parse("0.2"), flts::Degree::parse("0.4"), flts::Degree::parse("0.6"),
            flts::Degree::parse("0.8"), flts::Degree::parse("1")};
}

inline const std::vector<flts::TNormKind>& all_tnorms() {
    static const std::vector<flts::TNormKind> kinds = {
        flts::TNormKind::Goedel, flts::TNormKind::Lukasiewicz, flts::TNormKind::Product};
    return kinds;
}

}  // namespace testutil

#endif
