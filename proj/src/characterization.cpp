#include "flts/characterization.hpp"

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <map>
#include <unordered_set>
#include <utility>

#include "flts/errors.hpp"
#include "flts/eval.hpp"
#include "flts/rng.hpp"
#include "flts/sampler.hpp"

namespace flts {

std::vector<Degree> pooled_constants(const Flts& m, const Flts& mp) {
    std::vector<Degree> out = degree_pool(m);
    std::vector<Degree> other = degree_pool(mp);
    out.insert(out.end(), other.begin(), other.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SimKind fragment_sim_kind(Fragment f) {
    switch (f) {
        case Fragment::FedKDelta:
        case Fragment::FedPdl: return SimKind::Forward;
        case Fragment::FpdK:
        case Fragment::FpdPdl: return SimKind::Directed;
    }
    throw ValidationError("invalid fragment");
}

PreservationReport preservation_test(const Flts& m, const Flts& mp, const CrispRelation& z,
                                     const LogicalPreorderParams& params, int n_samples,
                                     std::uint64_t seed) {
    if (n_samples < 0) throw ValidationError("sample count must be >= 0");
    PreservationReport report;
    report.precondition = fragment_sim_kind(params.fragment) == SimKind::Forward
                              ? check_simulation(m, mp, z)
                              : check_directed_simulation(m, mp, z);
    if (!report.precondition.ok()) return report;

    Rng rng(seed);
    for (int i = 0; i < n_samples; ++i) {
        FormulaPtr f =
            sample_formula(params.fragment, m.signature(), params.constants, params.max_depth, rng);
        FuzzySet left = eval_formula(m, f, params.tnorm);
        FuzzySet right = eval_formula(mp, f, params.tnorm);
        ++report.samples;
        for (auto [x, xp] : z.pairs()) {
            if (left.at(x) > right.at(xp))
                report.violations.push_back({f, x, xp, left.at(x), right.at(xp)});
        }
    }
    return report;
}

namespace {

// ---------------------------------------------------------------------------
// Semantic formula enumeration.
//
// A formula is represented by its value vector over the disjoint union of both
// state sets (left model first). Degrees are interned as integer ids: under
// the Goedel t-norm every connective maps the initial universe (both degree
// pools plus the declared constants) into itself, so the table stays fixed and
// sorted and all operations are integer arithmetic on ids; Lukasiewicz and
// product create new degrees, which are interned on the fly and compared
// through their rationals.
// ---------------------------------------------------------------------------

using Vec = std::vector<std::uint32_t>;

struct VecHash {
    std::size_t operator()(const Vec& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint32_t x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Guards against runaway enumeration on unconvergent t-norms / large models.
constexpr std::size_t kMaxVectors = 1000000;

class DegreeTable {
public:
    DegreeTable(TNormKind kind, std::vector<Degree> universe)
        : kind_(kind), closed_(kind == TNormKind::Goedel), vals_(std::move(universe)) {
        std::sort(vals_.begin(), vals_.end());
        vals_.erase(std::unique(vals_.begin(), vals_.end()), vals_.end());
        for (std::size_t i = 0; i < vals_.size(); ++i)
            ids_.emplace(vals_[i], static_cast<std::uint32_t>(i));
        zero_ = intern(Degree::zero());
        one_ = intern(Degree::one());
    }

    std::uint32_t intern(const Degree& d) {
        auto it = ids_.find(d);
        if (it != ids_.end()) return it->second;
        // The Goedel universe is closed, so lookups never miss there.
        assert(!closed_);
        auto id = static_cast<std::uint32_t>(vals_.size());
        vals_.push_back(d);
        ids_.emplace(d, id);
        return id;
    }

    const Degree& degree(std::uint32_t id) const { return vals_[id]; }
    std::size_t size() const { return vals_.size(); }
    std::uint32_t zero() const { return zero_; }
    std::uint32_t one() const { return one_; }

    bool le(std::uint32_t a, std::uint32_t b) const {
        return closed_ ? a <= b : vals_[a] <= vals_[b];
    }
    std::uint32_t meet(std::uint32_t a, std::uint32_t b) const { return le(a, b) ? a : b; }
    std::uint32_t join(std::uint32_t a, std::uint32_t b) const { return le(a, b) ? b : a; }
    std::uint32_t delta(std::uint32_t a) const { return a == one_ ? one_ : zero_; }

    std::uint32_t tnorm(std::uint32_t a, std::uint32_t b) {
        if (closed_) return std::min(a, b);
        Degree d = flts::tnorm(kind_, vals_[a], vals_[b]);
        return intern(d);
    }
    std::uint32_t residuum(std::uint32_t a, std::uint32_t b) {
        if (closed_) return a <= b ? one_ : b;
        Degree d = flts::residuum(kind_, vals_[a], vals_[b]);
        return intern(d);
    }

private:
    TNormKind kind_;
    bool closed_;
    std::vector<Degree> vals_;
    std::map<Degree, std::uint32_t> ids_;
    std::uint32_t zero_ = 0, one_ = 0;
};

[[noreturn]] void throw_budget() {
    throw PreconditionError(
        "semantic enumeration exceeded the vector budget; reduce max_depth or the "
        "model sizes");
}

// A set of vectors kept closed under pairwise meets (or joins). Diamonds
// distribute over disjunctions only, so their useful arguments are the meets
// of generators; dually boxes consume joins.
//
// Adding v to an already-closed set C only requires the combinations with the
// members of C: (v op c1) op (v op c2) = v op (c1 op c2) and (v op c1) op c2 =
// v op (c1 op c2) land back in {v op c | c in C}, so C together with those
// combinations is closed again. Total cost is O(#adds * |closure|) rather than
// quadratic in the closure size.
class LatticeClosure {
public:
    LatticeClosure(const DegreeTable* table, bool meets) : table_(table), meets_(meets) {}

    const std::vector<Vec>& elems() const { return elems_; }

    void add(const Vec& v) {
        if (!set_.insert(v).second) return;
        const std::size_t old = elems_.size();
        elems_.push_back(v);
        for (std::size_t i = 0; i < old; ++i) {
            const Vec& other = elems_[i];
            Vec c(v.size());
            for (std::size_t j = 0; j < v.size(); ++j)
                c[j] = meets_ ? table_->meet(v[j], other[j]) : table_->join(v[j], other[j]);
            if (set_.insert(c).second) elems_.push_back(std::move(c));
        }
        if (elems_.size() > kMaxVectors) throw_budget();
    }

private:
    const DegreeTable* table_;
    bool meets_;
    std::unordered_set<Vec, VecHash> set_;
    std::vector<Vec> elems_;
};

// The same closure over vectors packed one id per byte — usable whenever the
// degree table is fixed (Goedel) with < 256 values and there are at most 8
// joint states. Ids are assigned in degree order there, so bytewise min/max
// are exactly the lattice operations.
class PackedClosure {
public:
    explicit PackedClosure(bool meets) : meets_(meets) {}

    static std::uint64_t pack(const Vec& v) {
        std::uint64_t out = 0;
        for (std::size_t j = 0; j < v.size(); ++j)
            out |= static_cast<std::uint64_t>(v[j] & 0xff) << (8 * j);
        return out;
    }

    const std::vector<std::uint64_t>& elems() const { return elems_; }

    void add(std::uint64_t v) {
        if (!set_.insert(v).second) return;
        const std::size_t old = elems_.size();
        elems_.push_back(v);
        for (std::size_t i = 0; i < old; ++i) {
            const std::uint64_t other = elems_[i];
            std::uint64_t c = 0;
            for (int shift = 0; shift < 64; shift += 8) {
                const std::uint64_t a = (v >> shift) & 0xff;
                const std::uint64_t b = (other >> shift) & 0xff;
                c |= (meets_ == (a < b) ? a : b) << shift;
            }
            if (set_.insert(c).second) elems_.push_back(c);
        }
        if (elems_.size() > kMaxVectors) throw_budget();
    }

private:
    bool meets_;
    std::unordered_set<std::uint64_t> set_;
    std::vector<std::uint64_t> elems_;
};

struct Edge {
    int src, dst;
    std::uint32_t degree;
};

}  // namespace

HmResult hm_relation(const Flts& m, const Flts& mp, const LogicalPreorderParams& params) {
    if (params.fragment != Fragment::FedKDelta && params.fragment != Fragment::FpdK)
        throw ValidationError(
            "logical preorder enumeration handles the program-free fragments (fedKDelta, fpdK) "
            "only");
    if (!(m.signature() == mp.signature()))
        throw ValidationError("models carry different signatures");
    if (params.max_depth < 0) throw ValidationError("max_depth must be >= 0");

    const bool positive = params.fragment == Fragment::FpdK;  // boxes, disjunction, constants
    const int n_left = m.state_count();
    const int n_right = mp.state_count();
    const auto n = static_cast<std::size_t>(n_left + n_right);
    const auto& sig = m.signature();
    const int n_actions = static_cast<int>(sig.actions().size());

    std::vector<Degree> universe = pooled_constants(m, mp);
    universe.insert(universe.end(), params.constants.begin(), params.constants.end());
    DegreeTable table(params.tnorm, std::move(universe));

    std::vector<std::uint32_t> constant_ids;
    for (const Degree& c : params.constants) constant_ids.push_back(table.intern(c));
    std::sort(constant_ids.begin(), constant_ids.end());
    constant_ids.erase(std::unique(constant_ids.begin(), constant_ids.end()),
                       constant_ids.end());

    // Transitions of both models over the joint index space.
    std::vector<std::vector<Edge>> edges(static_cast<std::size_t>(n_actions));
    for (const Transition& t : m.transitions())
        edges[static_cast<std::size_t>(t.action)].push_back(
            {t.from, t.to, table.intern(t.degree)});
    for (const Transition& t : mp.transitions())
        edges[static_cast<std::size_t>(t.action)].push_back(
            {n_left + t.from, n_left + t.to, table.intern(t.degree)});

    std::vector<char> alive(static_cast<std::size_t>(n_left) * n_right, 1);
    auto prune = [&](const Vec& g) {
        for (int x = 0; x < n_left; ++x)
            for (int xp = 0; xp < n_right; ++xp) {
                char& cell = alive[static_cast<std::size_t>(x) * n_right + xp];
                if (cell && !table.le(g[static_cast<std::size_t>(x)],
                                      g[static_cast<std::size_t>(n_left + xp)]))
                    cell = 0;
            }
    };

    // With a fixed table and at most 8 joint states a whole vector fits in one
    // 64-bit word, which keeps the closure sets allocation-free.
    const bool packed = params.tnorm == TNormKind::Goedel && n <= 8 && table.size() <= 256;

    std::vector<Vec> gens;
    std::unordered_set<Vec, VecHash> seen;
    LatticeClosure meets(&table, true);
    LatticeClosure joins(&table, false);
    PackedClosure pmeets(true);
    PackedClosure pjoins(false);
    auto add_gen = [&](Vec v) {
        if (!seen.insert(v).second) return false;
        if (seen.size() > kMaxVectors) throw_budget();
        prune(v);
        if (packed) {
            pmeets.add(PackedClosure::pack(v));
            if (positive) pjoins.add(PackedClosure::pack(v));
        } else {
            meets.add(v);
            if (positive) joins.add(v);
        }
        gens.push_back(std::move(v));
        return true;
    };

    auto modal = [&](int action, const Vec& v, bool box) {
        Vec out(n, box ? table.one() : table.zero());
        for (const Edge& e : edges[static_cast<std::size_t>(action)]) {
            const auto s = static_cast<std::size_t>(e.src);
            const auto d = static_cast<std::size_t>(e.dst);
            out[s] = box ? table.meet(out[s], table.residuum(e.degree, v[d]))
                         : table.join(out[s], table.tnorm(e.degree, v[d]));
        }
        return out;
    };
    auto modal_packed = [&](int action, std::uint64_t v, bool box) {
        Vec out(n, box ? table.one() : table.zero());
        for (const Edge& e : edges[static_cast<std::size_t>(action)]) {
            const auto s = static_cast<std::size_t>(e.src);
            const auto vd = static_cast<std::uint32_t>((v >> (8 * e.dst)) & 0xff);
            out[s] = box ? table.meet(out[s], table.residuum(e.degree, vd))
                         : table.join(out[s], table.tnorm(e.degree, vd));
        }
        return out;
    };

    for (int p = 0; p < static_cast<int>(sig.props().size()); ++p) {
        Vec v(n);
        for (int x = 0; x < n_left; ++x)
            v[static_cast<std::size_t>(x)] = table.intern(m.label(x, p));
        for (int xp = 0; xp < n_right; ++xp)
            v[static_cast<std::size_t>(n_left + xp)] = table.intern(mp.label(xp, p));
        add_gen(std::move(v));
    }
    if (positive)
        for (std::uint32_t c : constant_ids) add_gen(Vec(n, c));

    HmResult result{CrispRelation(&m, &mp), 0, false, 0};
    std::size_t gens_done = 0, meets_done = 0, joins_done = 0;
    for (int round = 1; round <= params.max_depth; ++round) {
        const std::size_t gens_hi = gens.size();
        const std::size_t meets_hi = packed ? pmeets.elems().size() : meets.elems().size();
        const std::size_t joins_hi =
            !positive ? 0 : (packed ? pjoins.elems().size() : joins.elems().size());
        bool added = false;
        for (std::size_t i = gens_done; i < gens_hi; ++i) {
            Vec d(n);
            for (std::size_t j = 0; j < n; ++j) d[j] = table.delta(gens[i][j]);
            added |= add_gen(std::move(d));
            for (std::uint32_t c : constant_ids) {
                Vec r(n);
                for (std::size_t j = 0; j < n; ++j) r[j] = table.residuum(c, gens[i][j]);
                added |= add_gen(std::move(r));
            }
        }
        for (std::size_t i = meets_done; i < meets_hi; ++i)
            for (int a = 0; a < n_actions; ++a)
                added |= add_gen(packed ? modal_packed(a, pmeets.elems()[i], false)
                                        : modal(a, meets.elems()[i], false));
        if (positive)
            for (std::size_t i = joins_done; i < joins_hi; ++i)
                for (int a = 0; a < n_actions; ++a)
                    added |= add_gen(packed ? modal_packed(a, pjoins.elems()[i], true)
                                            : modal(a, joins.elems()[i], true));
        gens_done = gens_hi;
        meets_done = meets_hi;
        joins_done = joins_hi;
        if (!added) {
            result.converged = true;
            break;
        }
        result.depth_reached = round;
    }

    for (int x = 0; x < n_left; ++x)
        for (int xp = 0; xp < n_right; ++xp)
            if (alive[static_cast<std::size_t>(x) * n_right + xp]) result.relation.add(x, xp);
    result.generators = gens.size();
    return result;
}

// ---------------------------------------------------------------------------
// Distinguishing formulas.
// ---------------------------------------------------------------------------

namespace {

// Right-nested conjunction without a constant terminator (the existential
// K fragment has no bare constants). Must not be called on an empty list.
FormulaPtr fold_and(const std::vector<FormulaPtr>& fs) {
    assert(!fs.empty());
    FormulaPtr out = fs.back();
    for (std::size_t i = fs.size() - 1; i-- > 0;) out = f_and(fs[i], out);
    return out;
}

FormulaPtr fold_or(const std::vector<FormulaPtr>& fs) {
    assert(!fs.empty());
    FormulaPtr out = fs.back();
    for (std::size_t i = fs.size() - 1; i-- > 0;) out = f_or(fs[i], out);
    return out;
}

Degree midpoint(const Degree& a, const Degree& b) {
    return Degree::from_mpq((a.value() + b.value()) / 2);
}

}  // namespace

Distinguisher::Distinguisher(const Flts& m, const Flts& mp, SimKind kind)
    : m_(m), mp_(mp), kind_(kind), largest_(&m, &mp) {
    RefinementRun run = refine(m, mp, kind);
    largest_ = run.largest;

    // A delta-guarded comparison of a stored value against a sub-witness.
    // Every entry satisfies, under each of the three t-norms, w(y) >= value
    // and w(y') < value; the guard is therefore 1 at y and 0 at y' regardless
    // of the t-norm (elsewhere it is still crisp, but may differ). Returns
    // null when the sub-pair has no witness (possible only with an empty
    // proposition alphabet), in which case the caller has none either.
    auto guard = [&](int y, int yp) -> FormulaPtr {
        auto it = witnesses_.find({y, yp});
        if (it == witnesses_.end()) return nullptr;
        return f_delta(f_implies(f_const(it->second.value_at_y), it->second.formula));
    };

    for (const Violation& v : run.label_rejected) {
        // L(x)(p) > L'(x')(p): delta(L(x)(p) -> p) is 1 at x and 0 at x'.
        FormulaPtr w = f_delta(f_implies(f_const(v.degree), f_prop(m.signature().props()[v.prop])));
        witnesses_.emplace(std::pair{v.x, v.xp}, Entry{std::move(w), Degree::one()});
    }

    for (const Violation& v : run.deletions) {
        const std::string& act = m.signature().actions()[v.action];
        if (v.kind == Violation::Kind::Forward) {
            // No y' with Z(y, y') matches (x, act, y) of degree d. Every y'
            // reachable with degree >= d was already refuted; conjoin the
            // guards of their witnesses: the conjunction is 1 at y and 0 at
            // each such y', so <act>(...) is >= d at x and < d at x'.
            std::vector<FormulaPtr> guards;
            bool complete = true;
            for (const Transition& t : mp_.successors(v.xp, v.action))
                if (t.degree >= v.degree) {
                    FormulaPtr g = guard(v.target, t.to);
                    if (!g) complete = false;
                    guards.push_back(std::move(g));
                }
            if (!complete) continue;
            FormulaPtr body;
            if (!guards.empty()) {
                body = fold_and(guards);
            } else if (kind_ == SimKind::Directed) {
                body = f_const(Degree::one());
            } else if (!m.signature().props().empty()) {
                // The existential K fragment has no bare constants; delta(0 -> p)
                // is constantly 1 in its stead.
                body = f_delta(f_implies(f_const(Degree::zero()), f_prop(m.signature().props()[0])));
            } else {
                // No proposition, no fragment formula at all: (x, x') is
                // unrelated yet logically indistinguishable. Recorded as a
                // missing witness; query() reports it.
                continue;
            }
            witnesses_.emplace(std::pair{v.x, v.xp},
                               Entry{f_diamond(p_action(act), std::move(body)), v.degree});
        } else {
            // Backward failure on (x', act, y') of degree d: no y with
            // delta(x, act, y) >= d relates to y'. Pick c strictly between d
            // and the largest outgoing degree below d; then [act](OR guards
            // or c) is 1 at x (every successor beats or meets c / is refuted
            // upward) but at most "d -> c" < 1 at x'.
            Degree below = Degree::zero();
            std::vector<FormulaPtr> body;
            bool complete = true;
            for (const Transition& t : m_.successors(v.x, v.action)) {
                if (t.degree >= v.degree) {
                    FormulaPtr g = guard(t.to, v.target);
                    if (!g) complete = false;
                    body.push_back(std::move(g));
                } else if (t.degree > below) {
                    below = t.degree;
                }
            }
            if (!complete) continue;
            body.push_back(f_const(midpoint(below, v.degree)));
            witnesses_.emplace(std::pair{v.x, v.xp},
                               Entry{f_box(p_action(act), fold_or(body)), Degree::one()});
        }
    }
}

DistinguishResult Distinguisher::query(int x, int xp, TNormKind tnorm) const {
    if (x < 0 || x >= m_.state_count())
        throw ValidationError("left state index out of range");
    if (xp < 0 || xp >= mp_.state_count())
        throw ValidationError("right state index out of range");
    DistinguishResult out;
    out.fragment = kind_ == SimKind::Forward ? Fragment::FedKDelta : Fragment::FpdK;
    if (largest_.contains(x, xp)) {
        out.related = true;
        return out;
    }
    auto it = witnesses_.find({x, xp});
    if (it == witnesses_.end())
        throw ValidationError(
            "the signature has no proposition, so the unrelated pair cannot be distinguished");
    out.related = false;
    out.witness = it->second.formula;
    out.value_left = eval_formula(m_, out.witness, tnorm).at(x);
    out.value_right = eval_formula(mp_, out.witness, tnorm).at(xp);
    return out;
}

DistinguishResult distinguishing_formula(const Flts& m, int x, const Flts& mp, int xp,
                                         SimKind kind, TNormKind tnorm) {
    return Distinguisher(m, mp, kind).query(x, xp, tnorm);
}

}  // namespace flts
