#ifndef FLTS_SIMULATION_HPP
#define FLTS_SIMULATION_HPP

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flts/model.hpp"

namespace flts {

// Forward: labels must not shrink and every transition of the left state must
// be matched (with at least the same degree) on the right. Directed adds the
// backward condition: every transition of the right state must be matched
// (with at least the same degree) on the left, landing in related targets.
enum class SimKind { Forward, Directed };

// A crisp relation between the state sets of two fixed models.
class CrispRelation {
public:
    CrispRelation(const Flts* left, const Flts* right) : left_(left), right_(right) {}

    static CrispRelation full(const Flts& left, const Flts& right);
    static CrispRelation identity(const Flts& m);

    const Flts* left() const { return left_; }
    const Flts* right() const { return right_; }

    // Throws ValidationError if an index is out of range.
    void add(int x, int xp);
    void remove(int x, int xp) { pairs_.erase({x, xp}); }
    bool contains(int x, int xp) const { return pairs_.count({x, xp}) != 0; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }

    // Sorted lexicographically.
    const std::set<std::pair<int, int>>& pairs() const { return pairs_; }

    // Same pair set (models are not compared).
    friend bool operator==(const CrispRelation& a, const CrispRelation& b) {
        return a.pairs_ == b.pairs_;
    }

private:
    const Flts* left_;
    const Flts* right_;
    std::set<std::pair<int, int>> pairs_;
};

// One broken simulation condition at a pair (x, x').
struct Violation {
    enum class Kind { Label, Forward, Backward };
    Kind kind;
    int x, xp;
    int prop = -1;    // Label: the proposition with L(x)(p) > L'(x')(p)
    int action = -1;  // Forward/Backward
    int target = -1;  // Forward: unmatched successor y of x; Backward: y' of x'
    Degree degree;    // Label: L(x)(p); otherwise the unmatched transition degree
};

struct ViolationReport {
    std::vector<Violation> entries;
    bool ok() const { return entries.empty(); }
};

std::string to_text(const Violation& v, const Flts& m, const Flts& mp);

// Report every violated condition of Z (empty report == Z is a simulation of
// the respective kind). The two models must share a signature, and Z must
// relate these two models.
ViolationReport check_simulation(const Flts& m, const Flts& mp, const CrispRelation& Z);
ViolationReport check_directed_simulation(const Flts& m, const Flts& mp, const CrispRelation& Z);

// Greatest-fixpoint computation with the per-pair deletion trace needed to
// synthesize distinguishing formulas: start from all label-compatible pairs
// and delete pairs whose forward (and, if directed, backward) condition fails,
// until stable. The final relation is order-independent; the trace is not.
struct RefinementRun {
    CrispRelation largest;
    std::vector<Violation> label_rejected;  // pairs excluded at initialization
    std::vector<Violation> deletions;       // sweep deletions, in order
};

RefinementRun refine(const Flts& m, const Flts& mp, SimKind kind);
// Same fixpoint computed with a seed-permuted sweep order (used to demonstrate
// order independence).
RefinementRun refine_shuffled(const Flts& m, const Flts& mp, SimKind kind, std::uint64_t seed);

CrispRelation largest_simulation(const Flts& m, const Flts& mp);
CrispRelation largest_directed_simulation(const Flts& m, const Flts& mp);

// Independent oracle: the union of every subset of S x S' that checks out as a
// simulation of the given kind. Exponential; refuses products larger than
// max_product_states (throws ValidationError).
CrispRelation brute_force_largest(const Flts& m, const Flts& mp, SimKind kind,
                                  int max_product_states = 16);

// Relational composition; Z1's right model must equal Z2's left model.
CrispRelation compose_relations(const CrispRelation& z1, const CrispRelation& z2);

}  // namespace flts

#endif
