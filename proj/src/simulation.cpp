#include "flts/simulation.hpp"

#include <algorithm>
#include <numeric>

#include "flts/errors.hpp"
#include "flts/rng.hpp"

namespace flts {

namespace {

void require_same_signature(const Flts& m, const Flts& mp) {
    if (!(m.signature() == mp.signature()))
        throw ValidationError("models have different signatures");
}

void require_relates(const CrispRelation& z, const Flts& m, const Flts& mp) {
    auto matches = [](const Flts* a, const Flts& b) { return a == &b || (a && *a == b); };
    if (!matches(z.left(), m) || !matches(z.right(), mp))
        throw ValidationError("relation does not relate these two models");
}

// First proposition (in signature order) whose label shrinks, if any.
int label_violation(const Flts& m, const Flts& mp, int x, int xp) {
    for (std::size_t p = 0; p < m.signature().props().size(); ++p)
        if (!(m.label(x, static_cast<int>(p)) <= mp.label(xp, static_cast<int>(p))))
            return static_cast<int>(p);
    return -1;
}

}  // namespace

CrispRelation CrispRelation::full(const Flts& left, const Flts& right) {
    CrispRelation z(&left, &right);
    for (int x = 0; x < left.state_count(); ++x)
        for (int xp = 0; xp < right.state_count(); ++xp) z.add(x, xp);
    return z;
}

CrispRelation CrispRelation::identity(const Flts& m) {
    CrispRelation z(&m, &m);
    for (int x = 0; x < m.state_count(); ++x) z.add(x, x);
    return z;
}

void CrispRelation::add(int x, int xp) {
    if (x < 0 || x >= left_->state_count() || xp < 0 || xp >= right_->state_count())
        throw ValidationError("relation pair (" + std::to_string(x) + "," + std::to_string(xp) +
                              ") is out of range");
    pairs_.emplace(x, xp);
}

std::string to_text(const Violation& v, const Flts& m, const Flts& mp) {
    const std::string pair = "(" + m.state_name(v.x) + "," + mp.state_name(v.xp) + ")";
    switch (v.kind) {
        case Violation::Kind::Label:
            return pair + ": label of " + m.signature().props()[v.prop] + " shrinks (" +
                   m.label(v.x, v.prop).str() + " > " + mp.label(v.xp, v.prop).str() + ")";
        case Violation::Kind::Forward:
            return pair + ": transition " + m.state_name(v.x) + " -" +
                   m.signature().actions()[v.action] + "-> " + m.state_name(v.target) +
                   " (degree " + v.degree.str() + ") has no related match from " +
                   mp.state_name(v.xp);
        case Violation::Kind::Backward:
            return pair + ": transition " + mp.state_name(v.xp) + " -" +
                   mp.signature().actions()[v.action] + "-> " + mp.state_name(v.target) +
                   " (degree " + v.degree.str() + ") has no related match from " +
                   m.state_name(v.x);
    }
    return pair;
}

namespace {

// Shared by the checker and the refinement loop: does some related successor
// match this transition with at least its degree?
bool forward_matched(const Flts& mp, const CrispRelation& z, int xp, const Transition& t) {
    for (const Transition& u : mp.successors(xp, t.action))
        if (u.degree >= t.degree && z.contains(t.to, u.to)) return true;
    return false;
}

bool backward_matched(const Flts& m, const CrispRelation& z, int x, const Transition& u) {
    for (const Transition& t : m.successors(x, u.action))
        if (t.degree >= u.degree && z.contains(t.to, u.to)) return true;
    return false;
}

ViolationReport check(const Flts& m, const Flts& mp, const CrispRelation& z, SimKind kind) {
    require_same_signature(m, mp);
    require_relates(z, m, mp);
    const int n_actions = static_cast<int>(m.signature().actions().size());
    ViolationReport report;
    for (auto [x, xp] : z.pairs()) {
        for (std::size_t p = 0; p < m.signature().props().size(); ++p)
            if (!(m.label(x, static_cast<int>(p)) <= mp.label(xp, static_cast<int>(p))))
                report.entries.push_back({Violation::Kind::Label, x, xp, static_cast<int>(p), -1,
                                          -1, m.label(x, static_cast<int>(p))});
        for (int a = 0; a < n_actions; ++a) {
            for (const Transition& t : m.successors(x, a))
                if (!forward_matched(mp, z, xp, t))
                    report.entries.push_back(
                        {Violation::Kind::Forward, x, xp, -1, a, t.to, t.degree});
            if (kind == SimKind::Directed)
                for (const Transition& u : mp.successors(xp, a))
                    if (!backward_matched(m, z, x, u))
                        report.entries.push_back(
                            {Violation::Kind::Backward, x, xp, -1, a, u.to, u.degree});
        }
    }
    return report;
}

RefinementRun refine_ordered(const Flts& m, const Flts& mp, SimKind kind,
                             const std::vector<std::pair<int, int>>& order) {
    const int n_actions = static_cast<int>(m.signature().actions().size());
    RefinementRun run{CrispRelation(&m, &mp), {}, {}};

    CrispRelation alive(&m, &mp);
    for (int x = 0; x < m.state_count(); ++x)
        for (int xp = 0; xp < mp.state_count(); ++xp) {
            int p = label_violation(m, mp, x, xp);
            if (p < 0)
                alive.add(x, xp);
            else
                run.label_rejected.push_back(
                    {Violation::Kind::Label, x, xp, p, -1, -1, m.label(x, p)});
        }

    // Delete-and-resweep until stable. Deleting a pair mid-sweep only makes
    // later checks stricter, which is sound for a greatest fixpoint; the
    // result does not depend on the order, the recorded trace does.
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [x, xp] : order) {
            if (!alive.contains(x, xp)) continue;
            Violation why;
            bool broken = false;
            for (int a = 0; a < n_actions && !broken; ++a) {
                for (const Transition& t : m.successors(x, a))
                    if (!forward_matched(mp, alive, xp, t)) {
                        why = {Violation::Kind::Forward, x, xp, -1, a, t.to, t.degree};
                        broken = true;
                        break;
                    }
                if (!broken && kind == SimKind::Directed)
                    for (const Transition& u : mp.successors(xp, a))
                        if (!backward_matched(m, alive, x, u)) {
                            why = {Violation::Kind::Backward, x, xp, -1, a, u.to, u.degree};
                            broken = true;
                            break;
                        }
            }
            if (broken) {
                alive.remove(x, xp);
                run.deletions.push_back(why);
                changed = true;
            }
        }
    }
    run.largest = alive;
    return run;
}

std::vector<std::pair<int, int>> default_order(const Flts& m, const Flts& mp) {
    std::vector<std::pair<int, int>> order;
    for (int x = 0; x < m.state_count(); ++x)
        for (int xp = 0; xp < mp.state_count(); ++xp) order.emplace_back(x, xp);
    return order;
}

}  // namespace

ViolationReport check_simulation(const Flts& m, const Flts& mp, const CrispRelation& z) {
    return check(m, mp, z, SimKind::Forward);
}

ViolationReport check_directed_simulation(const Flts& m, const Flts& mp, const CrispRelation& z) {
    return check(m, mp, z, SimKind::Directed);
}

RefinementRun refine(const Flts& m, const Flts& mp, SimKind kind) {
    require_same_signature(m, mp);
    return refine_ordered(m, mp, kind, default_order(m, mp));
}

RefinementRun refine_shuffled(const Flts& m, const Flts& mp, SimKind kind, std::uint64_t seed) {
    require_same_signature(m, mp);
    std::vector<std::pair<int, int>> order = default_order(m, mp);
    Rng rng(seed);
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
    return refine_ordered(m, mp, kind, order);
}

CrispRelation largest_simulation(const Flts& m, const Flts& mp) {
    return refine(m, mp, SimKind::Forward).largest;
}

CrispRelation largest_directed_simulation(const Flts& m, const Flts& mp) {
    return refine(m, mp, SimKind::Directed).largest;
}

CrispRelation brute_force_largest(const Flts& m, const Flts& mp, SimKind kind,
                                  int max_product_states) {
    require_same_signature(m, mp);
    const int nl = m.state_count(), nr = mp.state_count();
    const int n = nl * nr;
    if (n > max_product_states)
        throw ValidationError("state product " + std::to_string(n) +
                              " exceeds the brute-force bound " +
                              std::to_string(max_product_states));
    const int n_actions = static_cast<int>(m.signature().actions().size());
    auto pair_bit = [&](int x, int xp) { return std::uint32_t{1} << (x * nr + xp); };

    // Label-compatible pairs; any subset containing an incompatible pair fails
    // its check outright, so only subsets of this mask can contribute.
    std::uint32_t label_ok = 0;
    for (int x = 0; x < nl; ++x)
        for (int xp = 0; xp < nr; ++xp)
            if (label_violation(m, mp, x, xp) < 0) label_ok |= pair_bit(x, xp);

    // For each pair, the conditions it imposes on the subset: every transition
    // to be matched contributes the mask of pairs that could match it. A
    // subset is a simulation iff, for each member pair, every requirement mask
    // intersects the subset.
    std::vector<std::vector<std::uint32_t>> requirements(static_cast<std::size_t>(n));
    for (int x = 0; x < nl; ++x)
        for (int xp = 0; xp < nr; ++xp) {
            auto& reqs = requirements[static_cast<std::size_t>(x) * nr + xp];
            for (int a = 0; a < n_actions; ++a) {
                for (const Transition& t : m.successors(x, a)) {
                    std::uint32_t mask = 0;
                    for (const Transition& u : mp.successors(xp, a))
                        if (u.degree >= t.degree) mask |= pair_bit(t.to, u.to);
                    reqs.push_back(mask);
                }
                if (kind == SimKind::Directed)
                    for (const Transition& u : mp.successors(xp, a)) {
                        std::uint32_t mask = 0;
                        for (const Transition& t : m.successors(x, a))
                            if (t.degree >= u.degree) mask |= pair_bit(t.to, u.to);
                        reqs.push_back(mask);
                    }
            }
        }

    std::uint32_t result = 0;
    const std::uint32_t limit = n == 32 ? 0xffffffffu : (std::uint32_t{1} << n) - 1;
    for (std::uint32_t subset = limit;; --subset) {
        if ((subset & ~label_ok) == 0 && (subset & ~result) != 0) {
            bool valid = true;
            for (int i = 0; i < n && valid; ++i) {
                if (!(subset & (std::uint32_t{1} << i))) continue;
                for (std::uint32_t req : requirements[static_cast<std::size_t>(i)])
                    if ((req & subset) == 0) {
                        valid = false;
                        break;
                    }
            }
            if (valid) result |= subset;
        }
        if (subset == 0) break;
    }

    CrispRelation out(&m, &mp);
    for (int x = 0; x < nl; ++x)
        for (int xp = 0; xp < nr; ++xp)
            if (result & pair_bit(x, xp)) out.add(x, xp);
    return out;
}

CrispRelation compose_relations(const CrispRelation& z1, const CrispRelation& z2) {
    if (!(z1.right() == z2.left() || (z1.right() && z2.left() && *z1.right() == *z2.left())))
        throw ValidationError("relations do not compose: middle models differ");
    CrispRelation out(z1.left(), z2.right());
    for (auto [x, y] : z1.pairs())
        for (auto [y2, z] : z2.pairs())
            if (y == y2) out.add(x, z);
    return out;
}

}  // namespace flts
