#ifndef FLTS_SYNTAX_HPP
#define FLTS_SYNTAX_HPP

#include <memory>
#include <string>
#include <vector>

#include "flts/degree.hpp"

namespace flts {

class Formula;
class Program;
using FormulaPtr = std::shared_ptr<const Formula>;
using ProgramPtr = std::shared_ptr<const Program>;

enum class FormulaKind { Constant, Prop, Delta, And, Or, Implies, Box, Diamond };
enum class ProgramKind { Action, Test, Compose, Union, Star };

// Immutable formula node. Nodes are shared (shared_ptr), so trees are really
// DAGs; synthesized distinguishing formulas rely on this to stay small.
class Formula {
public:
    FormulaKind kind() const { return kind_; }

    const Degree& value() const;        // Constant
    const std::string& prop() const;    // Prop
    const FormulaPtr& child() const;    // Delta
    const FormulaPtr& left() const;     // And / Or / Implies
    const FormulaPtr& right() const;    // And / Or / Implies
    const ProgramPtr& prog() const;     // Box / Diamond
    const FormulaPtr& body() const;     // Box / Diamond

private:
    friend FormulaPtr f_const(Degree a);
    friend FormulaPtr f_prop(std::string p);
    friend FormulaPtr f_delta(FormulaPtr f);
    friend FormulaPtr f_and(FormulaPtr l, FormulaPtr r);
    friend FormulaPtr f_or(FormulaPtr l, FormulaPtr r);
    friend FormulaPtr f_implies(FormulaPtr l, FormulaPtr r);
    friend FormulaPtr f_box(ProgramPtr a, FormulaPtr f);
    friend FormulaPtr f_diamond(ProgramPtr a, FormulaPtr f);

    explicit Formula(FormulaKind k) : kind_(k) {}
    FormulaKind kind_;
    Degree value_;
    std::string prop_;
    FormulaPtr lhs_, rhs_;
    ProgramPtr prog_;
};

// Immutable program node.
class Program {
public:
    ProgramKind kind() const { return kind_; }

    const std::string& action() const;  // Action
    const FormulaPtr& test() const;     // Test
    const ProgramPtr& left() const;     // Compose / Union
    const ProgramPtr& right() const;    // Compose / Union
    const ProgramPtr& child() const;    // Star

private:
    friend ProgramPtr p_action(std::string name);
    friend ProgramPtr p_test(FormulaPtr f);
    friend ProgramPtr p_compose(ProgramPtr l, ProgramPtr r);
    friend ProgramPtr p_union(ProgramPtr l, ProgramPtr r);
    friend ProgramPtr p_star(ProgramPtr a);

    explicit Program(ProgramKind k) : kind_(k) {}
    ProgramKind kind_;
    std::string action_;
    FormulaPtr test_;
    ProgramPtr lhs_, rhs_;
};

FormulaPtr f_const(Degree a);
FormulaPtr f_prop(std::string p);
FormulaPtr f_delta(FormulaPtr f);
FormulaPtr f_and(FormulaPtr l, FormulaPtr r);
FormulaPtr f_or(FormulaPtr l, FormulaPtr r);
FormulaPtr f_implies(FormulaPtr l, FormulaPtr r);
FormulaPtr f_box(ProgramPtr a, FormulaPtr f);
FormulaPtr f_diamond(ProgramPtr a, FormulaPtr f);

ProgramPtr p_action(std::string name);
ProgramPtr p_test(FormulaPtr f);
ProgramPtr p_compose(ProgramPtr l, ProgramPtr r);
ProgramPtr p_union(ProgramPtr l, ProgramPtr r);
ProgramPtr p_star(ProgramPtr a);

// Right-nested conjunction terminated by the constant 1 (so big_and({}) is 1),
// and dually a disjunction terminated by 0.
FormulaPtr big_and(const std::vector<FormulaPtr>& fs);
FormulaPtr big_or(const std::vector<FormulaPtr>& fs);

// Structural (deep) equality.
bool operator==(const Formula& a, const Formula& b);
bool operator==(const Program& a, const Program& b);
inline bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
inline bool operator!=(const Program& a, const Program& b) { return !(a == b); }

// Concrete syntax with minimal parentheses; parse_formula/parse_program invert
// these exactly.
std::string to_string(const Formula& f);
std::string to_string(const Program& a);
inline std::string to_string(const FormulaPtr& f) { return to_string(*f); }
inline std::string to_string(const ProgramPtr& a) { return to_string(*a); }

}  // namespace flts

#endif
