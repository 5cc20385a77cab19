#include "flts/fragments.hpp"

#include <unordered_map>

#include "flts/errors.hpp"

namespace flts {

Fragment fragment_from_name(std::string_view name) {
    if (name == "fedKDelta") return Fragment::FedKDelta;
    if (name == "fedPDL") return Fragment::FedPdl;
    if (name == "fpdK") return Fragment::FpdK;
    if (name == "fpdPDL") return Fragment::FpdPdl;
    throw ValidationError("unknown fragment '" + std::string(name) +
                          "' (expected fedKDelta, fedPDL, fpdK, or fpdPDL)");
}

std::string fragment_name(Fragment f) {
    switch (f) {
        case Fragment::FedKDelta: return "fedKDelta";
        case Fragment::FedPdl: return "fedPDL";
        case Fragment::FpdK: return "fpdK";
        case Fragment::FpdPdl: return "fpdPDL";
    }
    throw ValidationError("invalid fragment");
}

bool FragmentReport::in(Fragment f) const {
    switch (f) {
        case Fragment::FedKDelta: return in_fedkdelta;
        case Fragment::FedPdl: return in_fedpdl;
        case Fragment::FpdK: return in_fpdk;
        case Fragment::FpdPdl: return in_fpdpdl;
    }
    return false;
}

namespace {

// Memoized by node address so shared subterms are visited once.
class Classifier {
public:
    FragmentReport formula(const Formula& f) {
        auto it = fmemo_.find(&f);
        if (it != fmemo_.end()) return it->second;
        FragmentReport r = compute(f);
        fmemo_.emplace(&f, r);
        return r;
    }

    ProgramFragmentReport program(const Program& a) {
        auto it = pmemo_.find(&a);
        if (it != pmemo_.end()) return it->second;
        ProgramFragmentReport r = compute(a);
        pmemo_.emplace(&a, r);
        return r;
    }

private:
    FragmentReport compute(const Formula& f) {
        FragmentReport r;
        switch (f.kind()) {
            case FormulaKind::Constant:
                // Bare constants are everywhere except fedKDelta.
                r.in_fedpdl = r.in_fpdpdl = r.in_fpdk = true;
                break;
            case FormulaKind::Prop:
                r.in_fedpdl = r.in_fedkdelta = r.in_fpdpdl = r.in_fpdk = true;
                break;
            case FormulaKind::Delta:
                r = formula(*f.child());
                break;
            case FormulaKind::And:
            case FormulaKind::Or: {
                FragmentReport l = formula(*f.left()), rr = formula(*f.right());
                r.in_fedpdl = l.in_fedpdl && rr.in_fedpdl;
                r.in_fpdpdl = l.in_fpdpdl && rr.in_fpdpdl;
                r.in_fpdk = l.in_fpdk && rr.in_fpdk;
                // Disjunction is excluded from fedKDelta.
                r.in_fedkdelta =
                    f.kind() == FormulaKind::And && l.in_fedkdelta && rr.in_fedkdelta;
                break;
            }
            case FormulaKind::Implies: {
                // The positive fragments admit implication only as "a -> phi"
                // with a constant antecedent.
                if (f.left()->kind() == FormulaKind::Constant) {
                    FragmentReport rr = formula(*f.right());
                    r.in_fedpdl = rr.in_fedpdl;
                    r.in_fedkdelta = rr.in_fedkdelta;
                    r.in_fpdpdl = rr.in_fpdpdl;
                    r.in_fpdk = rr.in_fpdk;
                } else {
                    formula(*f.left());  // classify for completeness of the memo
                    formula(*f.right());
                }
                break;
            }
            case FormulaKind::Box: {
                ProgramFragmentReport p = program(*f.prog());
                FragmentReport b = formula(*f.body());
                r.in_fpdpdl = p.in_fpudpdl && b.in_fpdpdl;
                r.in_fpdk = p.is_action && b.in_fpdk;
                break;
            }
            case FormulaKind::Diamond: {
                ProgramFragmentReport p = program(*f.prog());
                FragmentReport b = formula(*f.body());
                r.in_fedpdl = p.in_fedpdl && b.in_fedpdl;
                r.in_fedkdelta = p.is_action && b.in_fedkdelta;
                r.in_fpdpdl = p.in_fpedpdl && b.in_fpdpdl;
                r.in_fpdk = p.is_action && b.in_fpdk;
                break;
            }
        }
        return r;
    }

    ProgramFragmentReport compute(const Program& a) {
        ProgramFragmentReport r;
        switch (a.kind()) {
            case ProgramKind::Action:
                r.is_action = r.in_fedpdl = r.in_fpedpdl = r.in_fpudpdl = true;
                break;
            case ProgramKind::Compose:
            case ProgramKind::Union: {
                ProgramFragmentReport l = program(*a.left()), rr = program(*a.right());
                r.in_fedpdl = l.in_fedpdl && rr.in_fedpdl;
                r.in_fpedpdl = l.in_fpedpdl && rr.in_fpedpdl;
                r.in_fpudpdl = l.in_fpudpdl && rr.in_fpudpdl;
                break;
            }
            case ProgramKind::Star: {
                ProgramFragmentReport c = program(*a.child());
                r.in_fedpdl = c.in_fedpdl;
                r.in_fpedpdl = c.in_fpedpdl;
                r.in_fpudpdl = c.in_fpudpdl;
                break;
            }
            case ProgramKind::Test: {
                const Formula& body = *a.test();
                FragmentReport b = formula(body);
                // "phi ?" tests: phi from the matching formula fragment.
                r.in_fedpdl = b.in_fedpdl;
                r.in_fpedpdl = b.in_fpdpdl;
                // "(phi -> a) ?" tests are the universal-side form.
                if (body.kind() == FormulaKind::Implies &&
                    body.right()->kind() == FormulaKind::Constant)
                    r.in_fpudpdl = formula(*body.left()).in_fpdpdl;
                break;
            }
        }
        return r;
    }

    std::unordered_map<const Formula*, FragmentReport> fmemo_;
    std::unordered_map<const Program*, ProgramFragmentReport> pmemo_;
};

}  // namespace

FragmentReport classify(const Formula& f) {
    return Classifier().formula(f);
}

ProgramFragmentReport classify_program(const Program& a) {
    return Classifier().program(a);
}

}  // namespace flts
