#include "flts/parse.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "flts/errors.hpp"

namespace flts {

namespace {

enum class Tok {
    Ident, Number, Delta,
    LParen, RParen, LBracket, RBracket, Less, Greater,
    Amp, Pipe, Arrow, Semi, Plus, Star, Question,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, col;
};

const char* describe(Tok k) {
    switch (k) {
        case Tok::Ident: return "identifier";
        case Tok::Number: return "number";
        case Tok::Delta: return "'D'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Less: return "'<'";
        case Tok::Greater: return "'>'";
        case Tok::Amp: return "'&'";
        case Tok::Pipe: return "'|'";
        case Tok::Arrow: return "'->'";
        case Tok::Semi: return "';'";
        case Tok::Plus: return "'+'";
        case Tok::Star: return "'*'";
        case Tok::Question: return "'?'";
        case Tok::End: return "end of input";
    }
    return "?";
}

std::string describe(const Token& t) {
    if (t.kind == Tok::Ident || t.kind == Tok::Number) return "'" + t.text + "'";
    return describe(t.kind);
}

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto push = [&](Tok k, std::string t, std::size_t l, std::size_t c) {
        out.push_back({k, std::move(t), l, c});
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') { ++i; ++line; col = 1; continue; }
        if (c == ' ' || c == '\t' || c == '\r') { ++i; ++col; continue; }
        std::size_t l = line, start_col = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            auto digits = [&] { while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j; };
            digits();
            if (j < text.size() && text[j] == '.') { ++j; digits(); }
            else if (j < text.size() && text[j] == '/') { ++j; digits(); }
            push(Tok::Number, std::string(text.substr(i, j - i)), l, start_col);
            col += j - i;
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            std::string word(text.substr(i, j - i));
            Tok kind = (word == "D") ? Tok::Delta : Tok::Ident;
            push(kind, std::move(word), l, start_col);
            col += j - i;
            i = j;
            continue;
        }
        if (c == '-') {
            if (i + 1 < text.size() && text[i + 1] == '>') {
                push(Tok::Arrow, "->", l, start_col);
                i += 2;
                col += 2;
                continue;
            }
            throw ParseError("unexpected character '-'", line, col);
        }
        Tok k;
        switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '[': k = Tok::LBracket; break;
            case ']': k = Tok::RBracket; break;
            case '<': k = Tok::Less; break;
            case '>': k = Tok::Greater; break;
            case '&': k = Tok::Amp; break;
            case '|': k = Tok::Pipe; break;
            case ';': k = Tok::Semi; break;
            case '+': k = Tok::Plus; break;
            case '*': k = Tok::Star; break;
            case '?': k = Tok::Question; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        push(k, std::string(1, c), l, start_col);
        ++i;
        ++col;
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    FormulaPtr formula() {
        FormulaPtr f = implies();
        finish();
        return f;
    }

    ProgramPtr program() {
        ProgramPtr a = prog_union();
        finish();
        return a;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool eat(Tok k) {
        if (!at(k)) return false;
        ++pos_;
        return true;
    }

    [[noreturn]] void fail(std::string msg) {
        last_error_pos_ = pos_;
        throw ParseError(std::move(msg) + ", found " + describe(peek()), peek().line, peek().col);
    }

    void expect(Tok k, const char* where) {
        if (!eat(k)) fail(std::string("expected ") + describe(k) + " " + where);
    }

    void finish() {
        if (!at(Tok::End)) fail("unexpected trailing input");
    }

    FormulaPtr implies() {
        FormulaPtr l = disjunction();
        if (eat(Tok::Arrow)) return f_implies(std::move(l), implies());
        return l;
    }

    FormulaPtr disjunction() {
        FormulaPtr l = conjunction();
        while (eat(Tok::Pipe)) l = f_or(std::move(l), conjunction());
        return l;
    }

    FormulaPtr conjunction() {
        FormulaPtr l = unary();
        while (eat(Tok::Amp)) l = f_and(std::move(l), unary());
        return l;
    }

    FormulaPtr unary() {
        if (eat(Tok::Delta)) return f_delta(unary());
        if (eat(Tok::Less)) {
            ProgramPtr a = prog_union();
            expect(Tok::Greater, "to close the diamond program");
            return f_diamond(std::move(a), unary());
        }
        if (eat(Tok::LBracket)) {
            ProgramPtr a = prog_union();
            expect(Tok::RBracket, "to close the box program");
            return f_box(std::move(a), unary());
        }
        return primary();
    }

    FormulaPtr primary() {
        if (at(Tok::Number)) {
            const Token& t = advance();
            try {
                return f_const(Degree::parse(t.text));
            } catch (const ValidationError& e) {
                last_error_pos_ = pos_ - 1;
                throw ParseError(e.what(), t.line, t.col);
            }
        }
        if (at(Tok::Ident)) return f_prop(advance().text);
        if (eat(Tok::LParen)) {
            FormulaPtr f = implies();
            expect(Tok::RParen, "to close the parenthesis");
            return f;
        }
        fail("expected a formula");
    }

    ProgramPtr prog_union() {
        ProgramPtr l = prog_compose();
        while (eat(Tok::Plus)) l = p_union(std::move(l), prog_compose());
        return l;
    }

    ProgramPtr prog_compose() {
        ProgramPtr l = prog_postfix();
        while (eat(Tok::Semi)) l = p_compose(std::move(l), prog_postfix());
        return l;
    }

    ProgramPtr prog_postfix() {
        ProgramPtr a = prog_atom();
        while (eat(Tok::Star)) a = p_star(std::move(a));
        return a;
    }

    // A program atom is either a test "chi ?", a bare action name, or a
    // parenthesized program. "chi ?" is tried first and rolled back when it
    // does not pan out: an identifier alone is an action, but an identifier
    // followed by '?' is a test of a proposition, and "(...)" can open either
    // a formula or a program.
    ProgramPtr prog_atom() {
        std::size_t save = pos_;
        std::optional<std::size_t> test_miss;  // position where '?' was expected
        try {
            FormulaPtr f = unary();
            if (eat(Tok::Question)) return p_test(std::move(f));
            test_miss = pos_;
        } catch (const ParseError&) {
            // not a test; fall through to the program interpretation
        }
        pos_ = save;
        try {
            if (at(Tok::Ident)) return p_action(advance().text);
            if (eat(Tok::LParen)) {
                ProgramPtr a = prog_union();
                expect(Tok::RParen, "to close the parenthesis");
                return a;
            }
            fail("expected a program");
        } catch (const ParseError&) {
            // Whichever interpretation got further gives the better message.
            if (test_miss && *test_miss > last_error_pos_) {
                const Token& t = toks_[*test_miss];
                throw ParseError("expected '?' after test formula, found " + describe(t), t.line,
                                 t.col);
            }
            throw;
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t last_error_pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
    return Parser(lex(text)).formula();
}

ProgramPtr parse_program(std::string_view text) {
    return Parser(lex(text)).program();
}

}  // namespace flts
