#include "flts/syntax.hpp"

#include <cassert>

namespace flts {

const Degree& Formula::value() const {
    assert(kind_ == FormulaKind::Constant);
    return value_;
}
const std::string& Formula::prop() const {
    assert(kind_ == FormulaKind::Prop);
    return prop_;
}
const FormulaPtr& Formula::child() const {
    assert(kind_ == FormulaKind::Delta);
    return lhs_;
}
const FormulaPtr& Formula::left() const {
    assert(kind_ == FormulaKind::And || kind_ == FormulaKind::Or || kind_ == FormulaKind::Implies);
    return lhs_;
}
const FormulaPtr& Formula::right() const {
    assert(kind_ == FormulaKind::And || kind_ == FormulaKind::Or || kind_ == FormulaKind::Implies);
    return rhs_;
}
const ProgramPtr& Formula::prog() const {
    assert(kind_ == FormulaKind::Box || kind_ == FormulaKind::Diamond);
    return prog_;
}
const FormulaPtr& Formula::body() const {
    assert(kind_ == FormulaKind::Box || kind_ == FormulaKind::Diamond);
    return rhs_;
}

const std::string& Program::action() const {
    assert(kind_ == ProgramKind::Action);
    return action_;
}
const FormulaPtr& Program::test() const {
    assert(kind_ == ProgramKind::Test);
    return test_;
}
const ProgramPtr& Program::left() const {
    assert(kind_ == ProgramKind::Compose || kind_ == ProgramKind::Union);
    return lhs_;
}
const ProgramPtr& Program::right() const {
    assert(kind_ == ProgramKind::Compose || kind_ == ProgramKind::Union);
    return rhs_;
}
const ProgramPtr& Program::child() const {
    assert(kind_ == ProgramKind::Star);
    return lhs_;
}

FormulaPtr f_const(Degree a) {
    auto f = std::shared_ptr<Formula>(new Formula(FormulaKind::Constant));
    f->value_ = std::move(a);
    return f;
}
FormulaPtr f_prop(std::string p) {
    auto f = std::shared_ptr<Formula>(new Formula(FormulaKind::Prop));
    f->prop_ = std::move(p);
    return f;
}
FormulaPtr f_delta(FormulaPtr g) {
    auto f = std::shared_ptr<Formula>(new Formula(FormulaKind::Delta));
    f->lhs_ = std::move(g);
    return f;
}
FormulaPtr f_and(FormulaPtr l, FormulaPtr r) {
    auto f = std::shared_ptr<Formula>(new Formula(FormulaKind::And));
    f->lhs_ = std::move(l);
    f->rhs_ = std::move(r);
    return f;
}
FormulaPtr f_or(FormulaPtr l, FormulaPtr r) {
    auto f = std::shared_ptr<Formula>(new Formula(FormulaKind::Or));
    f->lhs_ = std::move(l);
    f->rhs_ = std::move(r);
    return f;
}
FormulaPtr f_implies(FormulaPtr l, FormulaPtr r) {
    auto f = std::shared_ptr<Formula>(new Formula(FormulaKind::Implies));
    f->lhs_ = std::move(l);
    f->rhs_ = std::move(r);
    return f;
}
FormulaPtr f_box(ProgramPtr a, FormulaPtr g) {
    auto f = std::shared_ptr<Formula>(new Formula(FormulaKind::Box));
    f->prog_ = std::move(a);
    f->rhs_ = std::move(g);
    return f;
}
FormulaPtr f_diamond(ProgramPtr a, FormulaPtr g) {
    auto f = std::shared_ptr<Formula>(new Formula(FormulaKind::Diamond));
    f->prog_ = std::move(a);
    f->rhs_ = std::move(g);
    return f;
}

ProgramPtr p_action(std::string name) {
    auto a = std::shared_ptr<Program>(new Program(ProgramKind::Action));
    a->action_ = std::move(name);
    return a;
}
ProgramPtr p_test(FormulaPtr f) {
    auto a = std::shared_ptr<Program>(new Program(ProgramKind::Test));
    a->test_ = std::move(f);
    return a;
}
ProgramPtr p_compose(ProgramPtr l, ProgramPtr r) {
    auto a = std::shared_ptr<Program>(new Program(ProgramKind::Compose));
    a->lhs_ = std::move(l);
    a->rhs_ = std::move(r);
    return a;
}
ProgramPtr p_union(ProgramPtr l, ProgramPtr r) {
    auto a = std::shared_ptr<Program>(new Program(ProgramKind::Union));
    a->lhs_ = std::move(l);
    a->rhs_ = std::move(r);
    return a;
}
ProgramPtr p_star(ProgramPtr b) {
    auto a = std::shared_ptr<Program>(new Program(ProgramKind::Star));
    a->lhs_ = std::move(b);
    return a;
}

FormulaPtr big_and(const std::vector<FormulaPtr>& fs) {
    FormulaPtr out = f_const(Degree::one());
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) out = f_and(*it, std::move(out));
    return out;
}

FormulaPtr big_or(const std::vector<FormulaPtr>& fs) {
    FormulaPtr out = f_const(Degree::zero());
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) out = f_or(*it, std::move(out));
    return out;
}

bool operator==(const Formula& a, const Formula& b) {
    if (&a == &b) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case FormulaKind::Constant: return a.value() == b.value();
        case FormulaKind::Prop: return a.prop() == b.prop();
        case FormulaKind::Delta: return *a.child() == *b.child();
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            return *a.left() == *b.left() && *a.right() == *b.right();
        case FormulaKind::Box:
        case FormulaKind::Diamond:
            return *a.prog() == *b.prog() && *a.body() == *b.body();
    }
    return false;
}

bool operator==(const Program& a, const Program& b) {
    if (&a == &b) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case ProgramKind::Action: return a.action() == b.action();
        case ProgramKind::Test: return *a.test() == *b.test();
        case ProgramKind::Compose:
        case ProgramKind::Union:
            return *a.left() == *b.left() && *a.right() == *b.right();
        case ProgramKind::Star: return *a.child() == *b.child();
    }
    return false;
}

namespace {

// Precedence levels used by the printer and mirrored by the parser:
// formulas: -> (0, right-assoc) < | (1) < & (2) < unary D/<>/[] (3) < atoms;
// programs: + (0) < ; (1) < postfix * (2) < atoms. A node is parenthesized
// when its level is below the minimum its context requires.
int formula_level(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Implies: return 0;
        case FormulaKind::Or: return 1;
        case FormulaKind::And: return 2;
        case FormulaKind::Delta:
        case FormulaKind::Box:
        case FormulaKind::Diamond: return 3;
        default: return 4;
    }
}

int program_level(const Program& a) {
    switch (a.kind()) {
        case ProgramKind::Union: return 0;
        case ProgramKind::Compose: return 1;
        case ProgramKind::Star: return 2;
        default: return 3;
    }
}

void render(const Formula& f, int min_level, std::string& out);
void render(const Program& a, int min_level, std::string& out);

void render(const Formula& f, int min_level, std::string& out) {
    if (formula_level(f) < min_level) {
        out += '(';
        render(f, 0, out);
        out += ')';
        return;
    }
    switch (f.kind()) {
        case FormulaKind::Constant: out += f.value().str(); break;
        case FormulaKind::Prop: out += f.prop(); break;
        case FormulaKind::Delta:
            out += "D ";
            render(*f.child(), 3, out);
            break;
        case FormulaKind::And:
            render(*f.left(), 2, out);
            out += " & ";
            render(*f.right(), 3, out);
            break;
        case FormulaKind::Or:
            render(*f.left(), 1, out);
            out += " | ";
            render(*f.right(), 2, out);
            break;
        case FormulaKind::Implies:
            render(*f.left(), 1, out);
            out += " -> ";
            render(*f.right(), 0, out);
            break;
        case FormulaKind::Box:
            out += '[';
            render(*f.prog(), 0, out);
            out += "] ";
            render(*f.body(), 3, out);
            break;
        case FormulaKind::Diamond:
            out += '<';
            render(*f.prog(), 0, out);
            out += "> ";
            render(*f.body(), 3, out);
            break;
    }
}

void render(const Program& a, int min_level, std::string& out) {
    if (program_level(a) < min_level) {
        out += '(';
        render(a, 0, out);
        out += ')';
        return;
    }
    switch (a.kind()) {
        case ProgramKind::Action: out += a.action(); break;
        case ProgramKind::Test:
            // Test bodies parse at unary level, so anything lower is wrapped.
            render(*a.test(), 3, out);
            out += '?';
            break;
        case ProgramKind::Compose:
            render(*a.left(), 1, out);
            out += " ; ";
            render(*a.right(), 2, out);
            break;
        case ProgramKind::Union:
            render(*a.left(), 0, out);
            out += " + ";
            render(*a.right(), 1, out);
            break;
        case ProgramKind::Star:
            render(*a.child(), 2, out);
            out += '*';
            break;
    }
}

}  // namespace

std::string to_string(const Formula& f) {
    std::string out;
    render(f, 0, out);
    return out;
}

std::string to_string(const Program& a) {
    std::string out;
    render(a, 0, out);
    return out;
}

}  // namespace flts
