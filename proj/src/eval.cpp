#include "flts/eval.hpp"

#include <cassert>
#include <unordered_map>

#include "flts/errors.hpp"

namespace flts {

namespace {

class Evaluator {
public:
    Evaluator(const Flts& m, TNormKind kind) : m_(m), kind_(kind), n_(m.state_count()) {}

    const std::vector<Degree>& formula(const Formula& f) {
        auto it = fmemo_.find(&f);
        if (it != fmemo_.end()) return it->second;
        return fmemo_.emplace(&f, compute(f)).first->second;
    }

    const std::vector<Degree>& program(const Program& a) {
        auto it = pmemo_.find(&a);
        if (it != pmemo_.end()) return it->second;
        return pmemo_.emplace(&a, compute(a)).first->second;
    }

private:
    std::vector<Degree> compute(const Formula& f) {
        std::vector<Degree> out(static_cast<std::size_t>(n_));
        switch (f.kind()) {
            case FormulaKind::Constant:
                out.assign(static_cast<std::size_t>(n_), f.value());
                break;
            case FormulaKind::Prop: {
                int p = m_.signature().prop_index(f.prop());
                if (p < 0) throw ValidationError("unknown prop '" + f.prop() + "'");
                for (int x = 0; x < n_; ++x) out[x] = m_.label(x, p);
                break;
            }
            case FormulaKind::Delta: {
                const auto& v = formula(*f.child());
                for (int x = 0; x < n_; ++x) out[x] = baaz_delta(v[x]);
                break;
            }
            case FormulaKind::And: {
                const auto& l = formula(*f.left());
                const auto& r = formula(*f.right());
                for (int x = 0; x < n_; ++x) out[x] = std::min(l[x], r[x]);
                break;
            }
            case FormulaKind::Or: {
                const auto& l = formula(*f.left());
                const auto& r = formula(*f.right());
                for (int x = 0; x < n_; ++x) out[x] = std::max(l[x], r[x]);
                break;
            }
            case FormulaKind::Implies: {
                const auto& l = formula(*f.left());
                const auto& r = formula(*f.right());
                for (int x = 0; x < n_; ++x) out[x] = residuum(kind_, l[x], r[x]);
                break;
            }
            case FormulaKind::Diamond: {
                const auto& rel = program(*f.prog());
                const auto& v = formula(*f.body());
                for (int x = 0; x < n_; ++x) {
                    Degree best;  // sup over an empty set is 0
                    for (int y = 0; y < n_; ++y)
                        best = std::max(best, tnorm(kind_, rel[idx(x, y)], v[y]));
                    out[x] = best;
                }
                break;
            }
            case FormulaKind::Box: {
                const auto& rel = program(*f.prog());
                const auto& v = formula(*f.body());
                for (int x = 0; x < n_; ++x) {
                    Degree worst = Degree::one();  // inf over an empty set is 1
                    for (int y = 0; y < n_; ++y)
                        worst = std::min(worst, residuum(kind_, rel[idx(x, y)], v[y]));
                    out[x] = worst;
                }
                break;
            }
        }
        return out;
    }

    std::vector<Degree> compute(const Program& a) {
        std::vector<Degree> out(static_cast<std::size_t>(n_) * n_);
        switch (a.kind()) {
            case ProgramKind::Action: {
                int act = m_.signature().action_index(a.action());
                if (act < 0) throw ValidationError("unknown action '" + a.action() + "'");
                for (int x = 0; x < n_; ++x)
                    for (const Transition& t : m_.successors(x, act)) out[idx(x, t.to)] = t.degree;
                break;
            }
            case ProgramKind::Test: {
                const auto& v = formula(*a.test());
                for (int x = 0; x < n_; ++x) out[idx(x, x)] = v[x];
                break;
            }
            case ProgramKind::Compose:
                out = compose(program(*a.left()), program(*a.right()));
                break;
            case ProgramKind::Union: {
                const auto& l = program(*a.left());
                const auto& r = program(*a.right());
                for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(l[i], r[i]);
                break;
            }
            case ProgramKind::Star: {
                // R_0 = identity joined with the base relation; R_{k+1} = R_k
                // joined with R_k after one more base step. R_k holds the
                // suprema over paths of length <= k+1, and since dropping a
                // cycle never decreases a path's value (t-norms only shrink
                // products), the exact supremum is reached at the first
                // repetition, after at most |S| rounds.
                const auto& base = program(*a.child());
                std::vector<Degree> cur = base;
                for (int x = 0; x < n_; ++x) cur[idx(x, x)] = Degree::one();
                for (int round = 0; round <= n_ + 1; ++round) {
                    std::vector<Degree> step = compose(cur, base);
                    bool changed = false;
                    for (std::size_t i = 0; i < step.size(); ++i)
                        if (step[i] > cur[i]) {
                            cur[i] = step[i];
                            changed = true;
                        }
                    if (!changed) {
                        out = std::move(cur);
                        return out;
                    }
                }
                assert(false && "star iteration failed to stabilize");
                out = std::move(cur);
                break;
            }
        }
        return out;
    }

    std::vector<Degree> compose(const std::vector<Degree>& l, const std::vector<Degree>& r) {
        std::vector<Degree> out(static_cast<std::size_t>(n_) * n_);
        for (int x = 0; x < n_; ++x)
            for (int z = 0; z < n_; ++z) {
                const Degree& step = l[idx(x, z)];
                if (step.is_zero()) continue;
                for (int y = 0; y < n_; ++y) {
                    if (r[idx(z, y)].is_zero()) continue;
                    out[idx(x, y)] = std::max(out[idx(x, y)], tnorm(kind_, step, r[idx(z, y)]));
                }
            }
        return out;
    }

    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(x) * n_ + y; }

    const Flts& m_;
    TNormKind kind_;
    int n_;
    std::unordered_map<const Formula*, std::vector<Degree>> fmemo_;
    std::unordered_map<const Program*, std::vector<Degree>> pmemo_;
};

}  // namespace

FuzzySet eval_formula(const Flts& m, const FormulaPtr& f, TNormKind kind) {
    Evaluator ev(m, kind);
    return {&m, ev.formula(*f)};
}

FuzzyRelation eval_program(const Flts& m, const ProgramPtr& a, TNormKind kind) {
    Evaluator ev(m, kind);
    return {&m, ev.program(*a)};
}

}  // namespace flts
