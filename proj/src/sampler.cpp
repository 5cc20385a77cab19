#include "flts/sampler.hpp"

#include <functional>

#include "flts/errors.hpp"

namespace flts {

namespace {

// Which test construct a sampled program may use: fedPDL tests carry fedPDL
// formulas, fpedPDL tests carry fpdPDL formulas, fpudPDL tests carry
// "(phi -> a)?" with phi from fpdPDL.
enum class ProgClass { EdPdl, PePdl, PuPdl };

struct Sampler {
    const Signature& sig;
    const std::vector<Degree>& consts;
    Rng& rng;
    const SamplerWeights& w;

    bool props() const { return !sig.props().empty(); }
    bool actions() const { return !sig.actions().empty(); }
    bool constants() const { return !consts.empty(); }

    // Weighted pick over the currently admissible constructors.
    template <typename T>
    T pick(const std::vector<std::pair<unsigned, T>>& options) {
        unsigned total = 0;
        for (const auto& [weight, _] : options) total += weight;
        std::uint64_t roll = rng.below(total);
        for (const auto& [weight, value] : options) {
            if (roll < weight) return value;
            roll -= weight;
        }
        return options.back().second;  // unreachable
    }

    const std::string& any_action() { return rng.pick(sig.actions()); }
    Degree any_const() { return rng.pick(consts); }

    FormulaPtr formula(Fragment frag, int depth) {
        enum class C { Prop, Const, Delta, And, Or, ConstImplies, Diamond, Box };
        std::vector<std::pair<unsigned, C>> options;
        if (props()) options.emplace_back(w.prop, C::Prop);
        if (frag != Fragment::FedKDelta && constants()) options.emplace_back(w.constant, C::Const);
        if (depth > 0) {
            options.emplace_back(w.delta, C::Delta);
            options.emplace_back(w.conj, C::And);
            if (frag != Fragment::FedKDelta) options.emplace_back(w.disj, C::Or);
            if (constants()) options.emplace_back(w.const_implies, C::ConstImplies);
            if (actions()) {
                options.emplace_back(w.diamond, C::Diamond);
                if (frag == Fragment::FpdK || frag == Fragment::FpdPdl)
                    options.emplace_back(w.box, C::Box);
            }
        }
        if (options.empty())
            throw ValidationError("cannot sample a formula of " + fragment_name(frag) +
                                  ": no admissible atoms (need props" +
                                  (frag == Fragment::FedKDelta ? "" : " or constants") + ")");
        switch (pick(options)) {
            case C::Prop: return f_prop(rng.pick(sig.props()));
            case C::Const: return f_const(any_const());
            case C::Delta: return f_delta(formula(frag, depth - 1));
            case C::And: return f_and(formula(frag, depth - 1), formula(frag, depth - 1));
            case C::Or: return f_or(formula(frag, depth - 1), formula(frag, depth - 1));
            case C::ConstImplies:
                return f_implies(f_const(any_const()), formula(frag, depth - 1));
            case C::Diamond: {
                ProgramPtr a;
                if (frag == Fragment::FedPdl)
                    a = program(ProgClass::EdPdl, depth - 1);
                else if (frag == Fragment::FpdPdl)
                    a = program(ProgClass::PePdl, depth - 1);
                else
                    a = p_action(any_action());
                return f_diamond(std::move(a), formula(frag, depth - 1));
            }
            case C::Box: {
                ProgramPtr a = frag == Fragment::FpdPdl ? program(ProgClass::PuPdl, depth - 1)
                                                        : p_action(any_action());
                return f_box(std::move(a), formula(frag, depth - 1));
            }
        }
        throw ValidationError("unreachable");
    }

    ProgramPtr program(ProgClass cls, int depth) {
        enum class C { Action, Compose, Union, Star, Test };
        std::vector<std::pair<unsigned, C>> options;
        options.emplace_back(w.action, C::Action);
        if (depth > 0) {
            options.emplace_back(w.compose, C::Compose);
            options.emplace_back(w.prog_union, C::Union);
            options.emplace_back(w.star, C::Star);
            if (cls != ProgClass::PuPdl || constants()) options.emplace_back(w.test, C::Test);
        }
        switch (pick(options)) {
            case C::Action: return p_action(any_action());
            case C::Compose: return p_compose(program(cls, depth - 1), program(cls, depth - 1));
            case C::Union: return p_union(program(cls, depth - 1), program(cls, depth - 1));
            case C::Star: return p_star(program(cls, depth - 1));
            case C::Test:
                switch (cls) {
                    case ProgClass::EdPdl: return p_test(formula(Fragment::FedPdl, depth - 1));
                    case ProgClass::PePdl: return p_test(formula(Fragment::FpdPdl, depth - 1));
                    case ProgClass::PuPdl:
                        return p_test(
                            f_implies(formula(Fragment::FpdPdl, depth - 1), f_const(any_const())));
                }
        }
        throw ValidationError("unreachable");
    }
};

}  // namespace

FormulaPtr sample_formula(Fragment fragment, const Signature& sig,
                          const std::vector<Degree>& constants, int max_depth, Rng& rng,
                          const SamplerWeights& weights) {
    if (max_depth < 0) throw ValidationError("sampler depth must be non-negative");
    Sampler s{sig, constants, rng, weights};
    return s.formula(fragment, max_depth);
}

}  // namespace flts
