#ifndef FLTS_EVAL_HPP
#define FLTS_EVAL_HPP

#include <vector>

#include "flts/algebra.hpp"
#include "flts/model.hpp"
#include "flts/syntax.hpp"

namespace flts {

// A fuzzy set over the states of a fixed model: values[i] is the degree of
// state i.
struct FuzzySet {
    const Flts* model;
    std::vector<Degree> values;

    const Degree& at(int state) const { return values[static_cast<std::size_t>(state)]; }
};

// A fuzzy binary relation over the states of a fixed model, row-major.
struct FuzzyRelation {
    const Flts* model;
    std::vector<Degree> values;  // n*n

    const Degree& at(int x, int y) const {
        return values[static_cast<std::size_t>(x) * model->state_count() + y];
    }
};

// Standard t-norm-parameterized semantics: propositions read the labeling,
// conjunction/disjunction are min/max, implication is the residuum, a diamond
// takes the supremum of tnorm(program degree, body), a box the infimum of
// residuum(program degree, body); programs denote fuzzy relations where
// composition is sup-tnorm, union is max, a test is the diagonal of its
// formula's values, and star is the reflexive iteration limit (reached exactly
// after at most |S| rounds).
//
// Unknown prop/action names raise ValidationError naming the identifier.
// Sub-terms are evaluated once per call even when shared by many parents.
FuzzySet eval_formula(const Flts& m, const FormulaPtr& f, TNormKind kind);
FuzzyRelation eval_program(const Flts& m, const ProgramPtr& a, TNormKind kind);

}  // namespace flts

#endif
