#ifndef FLTS_CHARACTERIZATION_HPP
#define FLTS_CHARACTERIZATION_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "flts/algebra.hpp"
#include "flts/fragments.hpp"
#include "flts/model.hpp"
#include "flts/simulation.hpp"
#include "flts/syntax.hpp"

namespace flts {

// Parameters of a logical-preorder computation: which fragment, which t-norm,
// how deep, and which constant degrees the constant-using constructs may
// mention.
struct LogicalPreorderParams {
    Fragment fragment = Fragment::FedKDelta;
    TNormKind tnorm = TNormKind::Goedel;
    int max_depth = 8;
    std::vector<Degree> constants;
};

// The union of both models' degree pools — the default constant set.
std::vector<Degree> pooled_constants(const Flts& m, const Flts& mp);

// The simulation kind whose preservation/characterization theorem covers the
// fragment: forward for the existential fragments, directed for the positive
// ones.
SimKind fragment_sim_kind(Fragment f);

struct PreservationViolation {
    FormulaPtr formula;
    int x, xp;
    Degree value_left, value_right;
};

struct PreservationReport {
    // Non-empty when Z is not a simulation of the required kind; sampling is
    // then skipped.
    ViolationReport precondition;
    long samples = 0;
    std::vector<PreservationViolation> violations;

    bool ok() const { return precondition.ok() && violations.empty(); }
};

// Samples n_samples formulas of params.fragment and reports every violation of
// value(x) <= value(x') across (x,x') in Z. With a correct Z (the precondition
// check passes) there are none, for any t-norm and any seed.
PreservationReport preservation_test(const Flts& m, const Flts& mp, const CrispRelation& z,
                                     const LogicalPreorderParams& params, int n_samples,
                                     std::uint64_t seed);

struct HmResult {
    CrispRelation relation;
    int depth_reached = 0;    // last enumeration round that found new behaviour
    bool converged = false;   // true when a round added no new value vector
    std::size_t generators = 0;  // distinct semantic generators enumerated
};

// The logical preorder {(x,x') | phi(x) <= phi(x') for every enumerated phi}
// for the fedKDelta or fpdK fragment (the PDL-level fragments are covered by
// preservation_test only).
//
// Enumeration is semantic: formulas are represented by their value vectors on
// both models, deduplicated, and grown in rounds. Conjunction/disjunction
// distribute over every other constructor on the totally ordered degree chain
// (e.g. delta(phi and psi) = delta(phi) and delta(psi), <a>(phi or psi) =
// <a>phi or <a>psi, [a](phi and psi) = [a]phi and [a]psi, likewise for
// "c -> _"), so every fragment formula is a lattice combination of
// "generators" — formulas whose outermost constructor is not and/or. Monotone
// lattice combinations cannot break a pointwise comparison their generators
// satisfy, hence the preorder is decided by generators alone; diamonds need
// meet-closures and boxes join-closures of the generator set as inputs, which
// is exactly what each round expands. A round that adds no new generator
// vector proves the enumeration saturated for every depth (converged = true);
// under the Goedel t-norm all values stay in the finite pool-and-constants
// universe, so saturation is always reached. depth counts expansion rounds:
// depth 0 compares atoms only; a formula of operator depth d (and/or are free)
// is covered by round d.
HmResult hm_relation(const Flts& m, const Flts& mp, const LogicalPreorderParams& params);

struct DistinguishResult {
    bool related;
    FormulaPtr witness;  // null when related
    Degree value_left, value_right;  // witness values at x and x'
    Fragment fragment;   // FedKDelta (forward) or FpdK (directed)
};

// Witness synthesis for every pair outside the largest (directed) simulation
// of a model pair. Construction follows the refinement trace:
//   - label failure at prop p:        delta(L(x)(p) -> p)
//   - forward failure on (x,a,y), degree d: <a> AND{ delta(v_{y'} -> w_{y'}) }
//     over the y' with matching degree, where w_{y'} is the (already built)
//     witness for (y,y') and v_{y'} its value at y
//   - backward failure on (x',a,y'), degree d: [a]( OR{delta(v_y -> w_y)} or c )
//     with c halfway between d and the next smaller positive outgoing degree.
// Delta-wrapped sub-witnesses are crisp, which makes every witness value at x
// independent of the t-norm and the strict inequality valid under all three.
class Distinguisher {
public:
    // Runs the refinement for `kind` and prepares witnesses for all deleted
    // pairs. The models must outlive the Distinguisher.
    Distinguisher(const Flts& m, const Flts& mp, SimKind kind);

    const CrispRelation& largest() const { return largest_; }

    // Witness (or "related") for one pair; values are evaluated under `tnorm`.
    DistinguishResult query(int x, int xp, TNormKind tnorm = TNormKind::Goedel) const;

private:
    struct Entry {
        FormulaPtr formula;
        Degree value_at_y;  // the formula's value at its left state (t-norm independent)
    };

    const Flts& m_;
    const Flts& mp_;
    SimKind kind_;
    CrispRelation largest_;
    std::map<std::pair<int, int>, Entry> witnesses_;
};

// One-shot convenience wrapper around Distinguisher.
DistinguishResult distinguishing_formula(const Flts& m, int x, const Flts& mp, int xp,
                                         SimKind kind, TNormKind tnorm = TNormKind::Goedel);

}  // namespace flts

#endif
