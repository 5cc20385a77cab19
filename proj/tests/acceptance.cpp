// Acceptance gate: eight numbered checks covering the shipped guarantees, one
// PASS/FAIL line each (with wall time), nonzero exit if any check fails.
// Where a check carries a time budget, staying inside it is part of passing.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flts/algebra.hpp"
#include "flts/characterization.hpp"
#include "flts/eval.hpp"
#include "flts/fragments.hpp"
#include "flts/model.hpp"
#include "flts/parse.hpp"
#include "flts/rng.hpp"
#include "flts/simulation.hpp"
#include "flts/syntax.hpp"
#include "testutil.hpp"

namespace {

using namespace flts;
using Clock = std::chrono::steady_clock;

int g_failures = 0;

// budget < 0 means the check has no time limit (time is still reported).
void report(int number, const std::string& what, bool ok, std::string detail, double seconds,
            double budget) {
    if (ok && budget >= 0 && seconds >= budget) {
        ok = false;
        char buf[64];
        std::snprintf(buf, sizeof buf, "took %.2f s, budget %.0f s", seconds, budget);
        detail = buf;
    }
    if (!ok) ++g_failures;
    const std::string suffix = detail.empty() ? "" : " [" + detail + "]";
    std::printf("%s criterion %d: %s%s (%.2f s)\n", ok ? "PASS" : "FAIL", number, what.c_str(),
                suffix.c_str(), seconds);
    std::fflush(stdout);
}

// The body returns an empty string on success and a failure description
// otherwise; exceptions fail the check with their message.
template <typename Body>
void run(int number, const std::string& what, double budget, Body body) {
    const auto t0 = Clock::now();
    bool ok = false;
    std::string detail;
    try {
        detail = body();
        ok = detail.empty();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    report(number, what, ok, std::move(detail), seconds, budget);
}

struct ModelPair {
    Flts left, right;
};

// A random pair whose largest relations of both kinds are provably non-empty,
// so preservation is checked against real state pairs rather than vacuously:
// the right model copies the left one with labels possibly raised and adds
// fresh states with free outgoing structure. Raised labels keep the label
// condition, the copied transitions match each other in both directions, and
// the copied states gain no new outgoing transitions, so the identity
// embedding is a directed (hence also forward) simulation.
ModelPair related_pair(const Signature& sig, std::uint64_t i) {
    const int n = 2 + static_cast<int>(i % 3);
    const Flts left = random_flts(n, sig, 0.55, testutil::grid5(), 50000 + 2 * i);
    Rng rng(50001 + 2 * i);
    const std::vector<Degree> grid = testutil::grid5();

    std::vector<std::string> states = left.states();
    const int extra = 1 + static_cast<int>(i % 2);
    for (int e = 0; e < extra; ++e) states.push_back("t" + std::to_string(e));

    std::vector<TransitionSpec> specs;
    for (const Transition& tr : left.transitions())
        specs.push_back({left.state_name(tr.from),
                         sig.actions()[static_cast<std::size_t>(tr.action)],
                         left.state_name(tr.to), tr.degree});
    for (int e = 0; e < extra; ++e)
        for (const std::string& action : sig.actions())
            for (const std::string& to : states)
                if (rng.chance(0.4))
                    specs.push_back({"t" + std::to_string(e), action, to,
                                     grid[rng.below(grid.size())]});

    std::map<std::string, std::map<std::string, Degree>> labels;
    for (int x = 0; x < n; ++x)
        for (std::size_t p = 0; p < sig.props().size(); ++p) {
            Degree d = left.label(x, static_cast<int>(p));
            if (rng.chance(0.5)) d = std::max(d, grid[rng.below(grid.size())]);
            if (!d.is_zero()) labels[left.state_name(x)][sig.props()[p]] = d;
        }
    for (int e = 0; e < extra; ++e)
        for (const std::string& prop : sig.props())
            if (rng.chance(0.5))
                labels["t" + std::to_string(e)][prop] = grid[rng.below(grid.size())];

    return {left, Flts(sig, std::move(states), specs, labels)};
}

}  // namespace

int main() {
    const Flts p1l = testutil::pair1_left();
    const Flts p1r = testutil::pair1_right();
    const Flts p2l = testutil::pair2_left();
    const Flts p2r = testutil::pair2_right();

    // Filled by check 3 and reused by check 6.
    std::vector<ModelPair> oracle_models;

    run(1,
        "largest forward simulation on the first worked pair is exactly "
        "{(u2,v1),(u3,v1),(u4,v2)}",
        1.0, [&]() -> std::string {
            const CrispRelation got = largest_simulation(p1l, p1r);
            const std::set<std::pair<int, int>> want{{1, 0}, {2, 0}, {3, 1}};
            if (got.pairs() != want)
                return "computed relation has " + std::to_string(got.size()) +
                       " pairs and differs from the expected set";
            return {};
        });

    run(2,
        "largest directed simulation is empty on the first worked pair and "
        "{u2,u3,u4}x{v1,v2} on the second",
        1.0, [&]() -> std::string {
            const CrispRelation d1 = largest_directed_simulation(p1l, p1r);
            if (!d1.empty())
                return "first pair: expected the empty relation, got " +
                       std::to_string(d1.size()) + " pairs";
            const CrispRelation d2 = largest_directed_simulation(p2l, p2r);
            const std::set<std::pair<int, int>> want{{1, 0}, {1, 1}, {2, 0},
                                                     {2, 1}, {3, 0}, {3, 1}};
            if (d2.pairs() != want)
                return "second pair: computed relation differs from the expected six pairs";
            return {};
        });

    run(3,
        "greatest fixpoint equals the brute-force oracle for both kinds on 200 random "
        "pairs (up to 4 states, degree grid {0.25,0.5,0.75,1})",
        60.0, [&]() -> std::string {
            const Signature sig({"r", "s"}, {"p"});
            oracle_models.reserve(200);
            for (std::uint64_t i = 0; i < 200; ++i) {
                const int n = 2 + static_cast<int>(i % 3);
                const int np = 2 + static_cast<int>((i / 3) % 3);
                oracle_models.push_back(
                    {random_flts(n, sig, 0.45, testutil::grid4(), 40000 + 2 * i),
                     random_flts(np, sig, 0.45, testutil::grid4(), 40001 + 2 * i)});
            }
            long mismatches = 0;
            for (const ModelPair& q : oracle_models) {
                if (!(largest_simulation(q.left, q.right) ==
                      brute_force_largest(q.left, q.right, SimKind::Forward)))
                    ++mismatches;
                if (!(largest_directed_simulation(q.left, q.right) ==
                      brute_force_largest(q.left, q.right, SimKind::Directed)))
                    ++mismatches;
            }
            if (mismatches)
                return std::to_string(mismatches) + " of 400 fixpoints disagree with the oracle";
            return {};
        });

    run(4,
        "no preservation violations across 1071 fedPDL samples over largest simulations "
        "and 1071 fpdPDL samples over largest directed simulations (3 t-norms, 51 random "
        "pairs, every largest relation non-empty)",
        120.0, [&]() -> std::string {
            const Signature sig({"r", "s"}, {"p"});
            long fed_samples = 0, fpd_samples = 0, fed_comparisons = 0, fpd_comparisons = 0;
            long violations = 0, precondition_failures = 0, empty_relations = 0;
            for (std::uint64_t i = 0; i < 51; ++i) {
                const ModelPair q = related_pair(sig, i);
                const CrispRelation fwd = largest_simulation(q.left, q.right);
                const CrispRelation dir = largest_directed_simulation(q.left, q.right);
                empty_relations += fwd.empty() + dir.empty();
                int ti = 0;
                for (TNormKind t : testutil::all_tnorms()) {
                    LogicalPreorderParams params;
                    params.tnorm = t;
                    params.max_depth = 5;
                    params.constants = pooled_constants(q.left, q.right);
                    params.fragment = Fragment::FedPdl;
                    const PreservationReport a =
                        preservation_test(q.left, q.right, fwd, params, 7, 0x40000 + 100 * i + ti);
                    params.fragment = Fragment::FpdPdl;
                    const PreservationReport b =
                        preservation_test(q.left, q.right, dir, params, 7, 0x40001 + 100 * i + ti);
                    fed_samples += a.samples;
                    fpd_samples += b.samples;
                    fed_comparisons += a.samples * static_cast<long>(fwd.size());
                    fpd_comparisons += b.samples * static_cast<long>(dir.size());
                    violations += static_cast<long>(a.violations.size() + b.violations.size());
                    precondition_failures += !a.precondition.ok() + !b.precondition.ok();
                    ++ti;
                }
            }
            if (precondition_failures)
                return std::to_string(precondition_failures) +
                       " computed largest relations failed the simulation precondition";
            if (empty_relations)
                return std::to_string(empty_relations) +
                       " largest relations are empty although the pairs were built related";
            if (violations) return std::to_string(violations) + " order violations";
            if (fed_samples < 1000 || fpd_samples < 1000)
                return "sample totals " + std::to_string(fed_samples) + "/" +
                       std::to_string(fpd_samples) + " fall short of 1000 per fragment";
            if (fed_comparisons < 1000 || fpd_comparisons < 1000)
                return "state-pair comparison totals " + std::to_string(fed_comparisons) + "/" +
                       std::to_string(fpd_comparisons) + " are too small to be meaningful";
            return {};
        });

    run(5,
        "semantic enumeration converges and equals the fixpoint (fedKDelta vs forward, "
        "fpdK vs directed) on the worked pairs and 50 random pairs",
        120.0, [&]() -> std::string {
            long runs = 0, unconverged = 0, disagreements = 0;
            auto check = [&](const Flts& m, const Flts& mp) {
                for (Fragment f : {Fragment::FedKDelta, Fragment::FpdK}) {
                    LogicalPreorderParams params;
                    params.fragment = f;
                    params.tnorm = TNormKind::Goedel;
                    params.max_depth = 40;
                    params.constants = pooled_constants(m, mp);
                    const HmResult hm = hm_relation(m, mp, params);
                    const CrispRelation fix = f == Fragment::FedKDelta
                                                  ? largest_simulation(m, mp)
                                                  : largest_directed_simulation(m, mp);
                    ++runs;
                    if (!hm.converged)
                        ++unconverged;
                    else if (!(hm.relation == fix))
                        ++disagreements;
                }
            };
            check(p1l, p1r);
            check(p2l, p2r);
            const Signature sig({"r"}, {"p"});
            for (std::uint64_t i = 0; i < 50; ++i) {
                check(random_flts(2 + static_cast<int>(i % 3), sig, 0.5, testutil::grid5(),
                                  31000 + 2 * i),
                      random_flts(2 + static_cast<int>((i / 3) % 3), sig, 0.5, testutil::grid5(),
                                  31001 + 2 * i));
            }
            if (unconverged || disagreements)
                return std::to_string(unconverged) + " of " + std::to_string(runs) +
                       " runs unconverged, " + std::to_string(disagreements) +
                       " disagree with the fixpoint";
            return {};
        });

    run(6,
        "every pair outside a largest relation of the models above gets a witness in the "
        "matching fragment that is strictly greater on the left under all three t-norms",
        -1.0, [&]() -> std::string {
            if (oracle_models.size() != 200)
                return "the random model set from the oracle check is incomplete";
            long checked = 0, bad = 0;
            auto exercise = [&](const Flts& m, const Flts& mp) {
                for (SimKind kind : {SimKind::Forward, SimKind::Directed}) {
                    const Distinguisher d(m, mp, kind);
                    const Fragment want =
                        kind == SimKind::Forward ? Fragment::FedKDelta : Fragment::FpdK;
                    for (int x = 0; x < m.state_count(); ++x) {
                        for (int xp = 0; xp < mp.state_count(); ++xp) {
                            if (d.largest().contains(x, xp)) continue;
                            ++checked;
                            const DistinguishResult res = d.query(x, xp);
                            if (res.related || !res.witness || res.fragment != want ||
                                !classify(*res.witness).in(want)) {
                                ++bad;
                                continue;
                            }
                            for (TNormKind t : testutil::all_tnorms()) {
                                if (!(eval_formula(m, res.witness, t).at(x) >
                                      eval_formula(mp, res.witness, t).at(xp))) {
                                    ++bad;
                                    break;
                                }
                            }
                        }
                    }
                }
            };
            exercise(p1l, p1r);
            exercise(p2l, p2r);
            for (const ModelPair& q : oracle_models) exercise(q.left, q.right);
            if (bad)
                return std::to_string(bad) + " of " + std::to_string(checked) +
                       " witnesses are invalid";
            if (checked == 0) return "no pairs outside the largest relations were exercised";
            return {};
        });

    run(7,
        "t-norm laws hold exactly on 10000 random triples per t-norm (commutativity, "
        "associativity, neutrality, monotonicity, adjunction, residuum 1 iff <=)",
        10.0, [&]() -> std::string {
            long bad = 0;
            int ki = 0;
            for (TNormKind t : testutil::all_tnorms()) {
                Rng rng(0x700 + static_cast<std::uint64_t>(ki++));
                for (int i = 0; i < 10000; ++i) {
                    const Degree a = testutil::random_degree(rng);
                    const Degree b = testutil::random_degree(rng);
                    const Degree c = testutil::random_degree(rng);
                    const Degree lo = std::min(a, b), hi = std::max(a, b);
                    bool ok = tnorm(t, a, b) == tnorm(t, b, a);
                    ok = ok && tnorm(t, a, tnorm(t, b, c)) == tnorm(t, tnorm(t, a, b), c);
                    ok = ok && tnorm(t, a, Degree::one()) == a;
                    ok = ok && tnorm(t, lo, c) <= tnorm(t, hi, c);
                    ok = ok && (tnorm(t, c, a) <= b) == (c <= residuum(t, a, b));
                    ok = ok && residuum(t, a, b).is_one() == (a <= b);
                    if (!ok) ++bad;
                }
            }
            if (bad) return std::to_string(bad) + " triples violate a law";
            return {};
        });

    run(8,
        "fixpoint Kleene star equals the simple-path supremum on 100 random models for "
        "all three t-norms",
        -1.0, [&]() -> std::string {
            const Signature sig({"r", "s"}, {"p"});
            const std::vector<std::pair<ProgramPtr, ProgramPtr>> programs = {
                {parse_program("r"), parse_program("r*")},
                {parse_program("r + s"), parse_program("(r + s)*")},
                {parse_program("r ; s"), parse_program("(r ; s)*")}};
            long mismatches = 0;
            for (std::uint64_t i = 0; i < 100; ++i) {
                const Flts m = random_flts(2 + static_cast<int>(i % 3), sig, 0.5,
                                           testutil::grid5(), 80000 + i);
                for (const auto& [base_prog, star_prog] : programs) {
                    for (TNormKind t : testutil::all_tnorms()) {
                        const FuzzyRelation base = eval_program(m, base_prog, t);
                        const FuzzyRelation star = eval_program(m, star_prog, t);
                        for (int x = 0; x < m.state_count(); ++x)
                            for (int y = 0; y < m.state_count(); ++y)
                                if (star.at(x, y) != testutil::star_path_oracle(base, x, y, t))
                                    ++mismatches;
                    }
                }
            }
            if (mismatches)
                return std::to_string(mismatches) +
                       " star entries disagree with the path supremum";
            return {};
        });

    return g_failures == 0 ? 0 : 1;
}
