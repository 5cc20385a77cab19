#ifndef FLTS_SAMPLER_HPP
#define FLTS_SAMPLER_HPP

#include <vector>

#include "flts/degree.hpp"
#include "flts/fragments.hpp"
#include "flts/model.hpp"
#include "flts/rng.hpp"
#include "flts/syntax.hpp"

namespace flts {

// Constructor weights for the random formula sampler; defaults are uniform.
struct SamplerWeights {
    unsigned prop = 1, constant = 1, delta = 1, conj = 1, disj = 1, const_implies = 1,
             diamond = 1, box = 1;
    unsigned action = 1, compose = 1, prog_union = 1, star = 1, test = 1;
};

// A random formula of the given fragment with AST depth <= max_depth. Props
// and actions are drawn from the signature, constants (for "a -> phi",
// "(phi -> a)?" and bare constant atoms) from `constants`; constant-using
// constructors are simply dropped when that list is empty. The result always
// classifies into `fragment`. Deterministic given the Rng state.
FormulaPtr sample_formula(Fragment fragment, const Signature& sig,
                          const std::vector<Degree>& constants, int max_depth, Rng& rng,
                          const SamplerWeights& weights = {});

}  // namespace flts

#endif
