#pragma once

#include <gmpxx.h>

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtheta/errors.hpp"

namespace qtheta::dsl {

struct SourceSpan {
    int line = 1;
    int column = 1;
    size_t offset = 0;
};

inline std::string at(const SourceSpan& s) {
    return "line " + std::to_string(s.line) + ", column " + std::to_string(s.column);
}

class LexError : public Error {
public:
    LexError(const SourceSpan& span, const std::string& msg)
        : Error(at(span) + ": " + msg), span_(span) {}
    const SourceSpan& span() const { return span_; }

private:
    SourceSpan span_;
};

class ParseError : public Error {
public:
    ParseError(const SourceSpan& span, const std::string& msg)
        : Error(at(span) + ": " + msg), span_(span) {}
    const SourceSpan& span() const { return span_; }

private:
    SourceSpan span_;
};

// ---------------------------------------------------------------------------
// Tokens
// ---------------------------------------------------------------------------

enum class TokKind {
    Ident, Int, Rational, String,
    Plus, Minus, Star, Slash, Caret,
    LParen, RParen, LBrace, RBrace, LBracket, RBracket,
    Colon, Comma, Semicolon, Equals,
    KwIdentity, KwVars, KwWhere, KwLhs, KwRhs, KwTags, KwPi, KwTau,
    End
};

struct Token {
    TokKind kind;
    std::string text;
    mpq_class value; // Int / Rational payload
    SourceSpan span;
};

inline std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    size_t i = 0;
    int line = 1, col = 1;
    auto span_here = [&] { return SourceSpan{line, col, i}; };
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    static const std::map<std::string, TokKind> kKeywords = {
        {"identity", TokKind::KwIdentity}, {"vars", TokKind::KwVars},
        {"where", TokKind::KwWhere},       {"lhs", TokKind::KwLhs},
        {"rhs", TokKind::KwRhs},           {"tags", TokKind::KwTags},
        {"pi", TokKind::KwPi},             {"tau", TokKind::KwTau},
    };

    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        SourceSpan sp = span_here();
        auto push1 = [&](TokKind k) {
            out.push_back(Token{k, std::string(1, c), mpq_class(0), sp});
            advance(1);
        };
        switch (c) {
            case '+': push1(TokKind::Plus); continue;
            case '-': push1(TokKind::Minus); continue;
            case '*': push1(TokKind::Star); continue;
            case '/': push1(TokKind::Slash); continue;
            case '^': push1(TokKind::Caret); continue;
            case '(': push1(TokKind::LParen); continue;
            case ')': push1(TokKind::RParen); continue;
            case '{': push1(TokKind::LBrace); continue;
            case '}': push1(TokKind::RBrace); continue;
            case '[': push1(TokKind::LBracket); continue;
            case ']': push1(TokKind::RBracket); continue;
            case ':': push1(TokKind::Colon); continue;
            case ',': push1(TokKind::Comma); continue;
            case ';': push1(TokKind::Semicolon); continue;
            case '=': push1(TokKind::Equals); continue;
            default: break;
        }
        if (c == '"') {
            size_t start = i + 1;
            size_t end = text.find('"', start);
            if (end == std::string::npos) throw LexError(sp, "unterminated string");
            std::string s = text.substr(start, end - start);
            advance(end - i + 1);
            out.push_back(Token{TokKind::String, std::move(s), mpq_class(0), sp});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            std::string num = text.substr(i, j - i);
            // adjacent p/q (no whitespace) lexes as a single rational literal
            if (j + 1 < text.size() && text[j] == '/' &&
                std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                size_t k = j + 1;
                while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                std::string den = text.substr(j + 1, k - j - 1);
                mpq_class v(num + "/" + den);
                v.canonicalize();
                std::string whole = text.substr(i, k - i);
                advance(k - i);
                out.push_back(Token{TokKind::Rational, whole, std::move(v), sp});
            } else {
                mpq_class v(num);
                advance(j - i);
                out.push_back(Token{TokKind::Int, std::move(num), std::move(v), sp});
            }
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '_')) {
                ++j;
            }
            std::string word = text.substr(i, j - i);
            advance(j - i);
            auto kw = kKeywords.find(word);
            out.push_back(Token{kw == kKeywords.end() ? TokKind::Ident : kw->second,
                                std::move(word), mpq_class(0), sp});
            continue;
        }
        throw LexError(sp, std::string("illegal character '") + c + "'");
    }
    out.push_back(Token{TokKind::End, "", mpq_class(0), span_here()});
    return out;
}

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

enum class FuncName {
    SinQ, CosQ, CcsQ, SsnQ, Sin, Cos,
    Theta1, Theta2, Theta3, Theta4,
    Theta1P, Theta2P, Theta3P, Theta4P,
    ThetaNull1, ThetaNull2, ThetaNull3, ThetaNull4,
    PiQ, ExpI
};

/// Second argument of a theta call: which of the four tau forms.
enum class TauArg { One, Double, Half, S };

enum class ExprKind { Add, Sub, Mul, Div, Neg, Pow, Call, Var, Pi, Tau, Rational };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind{};
    SourceSpan span{};
    ExprPtr a;
    ExprPtr b;
    long pow_exp = 0;
    FuncName func{};
    int base_exp = 1;
    TauArg tau_arg = TauArg::One;
    std::string var_name;
    mpq_class rational;

    static ExprPtr binary(ExprKind k, ExprPtr lhs, ExprPtr rhs, SourceSpan sp) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->a = std::move(lhs);
        e->b = std::move(rhs);
        e->span = sp;
        return e;
    }
    static ExprPtr neg(ExprPtr x, SourceSpan sp) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Neg;
        e->a = std::move(x);
        e->span = sp;
        return e;
    }
    static ExprPtr pow(ExprPtr x, long k, SourceSpan sp) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Pow;
        e->a = std::move(x);
        e->pow_exp = k;
        e->span = sp;
        return e;
    }
    static ExprPtr var(std::string name, SourceSpan sp) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Var;
        e->var_name = std::move(name);
        e->span = sp;
        return e;
    }
    static ExprPtr pi(SourceSpan sp) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Pi;
        e->span = sp;
        return e;
    }
    static ExprPtr tau(SourceSpan sp) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Tau;
        e->span = sp;
        return e;
    }
    static ExprPtr lit(mpq_class v, SourceSpan sp) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Rational;
        e->rational = std::move(v);
        e->span = sp;
        return e;
    }
    static ExprPtr call(FuncName f, int base, ExprPtr arg, TauArg ta, SourceSpan sp) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Call;
        e->func = f;
        e->base_exp = base;
        e->a = std::move(arg);
        e->tau_arg = ta;
        e->span = sp;
        return e;
    }
};

/// Structural equality; spans are ignored.
inline bool equal(const ExprPtr& x, const ExprPtr& y) {
    if (!x || !y) return !x && !y;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Div:
            return equal(x->a, y->a) && equal(x->b, y->b);
        case ExprKind::Neg:
            return equal(x->a, y->a);
        case ExprKind::Pow:
            return x->pow_exp == y->pow_exp && equal(x->a, y->a);
        case ExprKind::Call:
            return x->func == y->func && x->base_exp == y->base_exp &&
                   x->tau_arg == y->tau_arg && equal(x->a, y->a);
        case ExprKind::Var:
            return x->var_name == y->var_name;
        case ExprKind::Pi:
        case ExprKind::Tau:
            return true;
        case ExprKind::Rational:
            return x->rational == y->rational;
    }
    return false;
}

struct IdentityDecl {
    std::string name;
    std::vector<std::string> vars;
    std::vector<std::pair<std::string, ExprPtr>> where_bindings;
    ExprPtr lhs;
    ExprPtr rhs;
    std::vector<std::string> tags;

    bool has_tag(const std::string& t) const {
        for (const auto& x : tags) {
            if (x == t) return true;
        }
        return false;
    }
};

inline bool equal(const IdentityDecl& x, const IdentityDecl& y) {
    if (x.name != y.name || x.vars != y.vars || x.tags != y.tags) return false;
    if (x.where_bindings.size() != y.where_bindings.size()) return false;
    for (size_t i = 0; i < x.where_bindings.size(); ++i) {
        if (x.where_bindings[i].first != y.where_bindings[i].first) return false;
        if (!equal(x.where_bindings[i].second, y.where_bindings[i].second)) return false;
    }
    return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
}

// ---------------------------------------------------------------------------
// Function-name table
// ---------------------------------------------------------------------------

struct FuncInfo {
    FuncName func;
    bool base_allowed;   // sinq[2] style subscripts
    int arity;           // expression arguments
    bool tau_slot;       // optional (theta) or mandatory (thetanull) tau form
    bool tau_mandatory;
};

inline const std::map<std::string, FuncInfo>& func_table() {
    static const std::map<std::string, FuncInfo> k = {
        {"sinq", {FuncName::SinQ, true, 1, false, false}},
        {"cosq", {FuncName::CosQ, true, 1, false, false}},
        {"ccsq", {FuncName::CcsQ, true, 1, false, false}},
        {"ssnq", {FuncName::SsnQ, true, 1, false, false}},
        {"sin", {FuncName::Sin, false, 1, false, false}},
        {"cos", {FuncName::Cos, false, 1, false, false}},
        {"expi", {FuncName::ExpI, false, 1, false, false}},
        {"theta1", {FuncName::Theta1, false, 1, true, false}},
        {"theta2", {FuncName::Theta2, false, 1, true, false}},
        {"theta3", {FuncName::Theta3, false, 1, true, false}},
        {"theta4", {FuncName::Theta4, false, 1, true, false}},
        {"theta1p", {FuncName::Theta1P, false, 1, true, false}},
        {"theta2p", {FuncName::Theta2P, false, 1, true, false}},
        {"theta3p", {FuncName::Theta3P, false, 1, true, false}},
        {"theta4p", {FuncName::Theta4P, false, 1, true, false}},
        {"thetanull1", {FuncName::ThetaNull1, false, 0, true, true}},
        {"thetanull2", {FuncName::ThetaNull2, false, 0, true, true}},
        {"thetanull3", {FuncName::ThetaNull3, false, 0, true, true}},
        {"thetanull4", {FuncName::ThetaNull4, false, 0, true, true}},
        {"piq", {FuncName::PiQ, true, 0, false, false}},
    };
    return k;
}

inline const char* func_text(FuncName f) {
    for (const auto& [name, info] : func_table()) {
        if (info.func == f) return name.c_str();
    }
    return "?";
}

inline bool is_q_dependent(FuncName f) {
    return f != FuncName::Sin && f != FuncName::Cos && f != FuncName::ExpI;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string text) : toks_(tokenize(text)) {}

    std::vector<IdentityDecl> parse_file() {
        std::vector<IdentityDecl> decls;
        while (!at_end()) decls.push_back(parse_decl());
        return decls;
    }

    ExprPtr parse_single_expression() {
        ExprPtr e = parse_expr();
        expect(TokKind::End, "end of input");
        return e;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    bool at_end() const { return cur().kind == TokKind::End; }
    const Token& eat() { return toks_[pos_++]; }

    const Token& expect(TokKind k, const char* what) {
        if (cur().kind != k) {
            throw ParseError(cur().span, std::string("expected ") + what + ", found '" +
                                             (cur().kind == TokKind::End ? "<end>" : cur().text) +
                                             "'");
        }
        return eat();
    }

    bool accept(TokKind k) {
        if (cur().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }

    IdentityDecl parse_decl() {
        IdentityDecl d;
        expect(TokKind::KwIdentity, "'identity'");
        d.name = expect(TokKind::String, "identity name string").text;
        expect(TokKind::LBrace, "'{'");

        expect(TokKind::KwVars, "'vars'");
        expect(TokKind::Colon, "':'");
        if (cur().kind == TokKind::Ident) {
            d.vars.push_back(eat().text);
            while (accept(TokKind::Comma)) {
                d.vars.push_back(expect(TokKind::Ident, "variable name").text);
            }
        }
        expect(TokKind::Semicolon, "';'");

        if (accept(TokKind::KwWhere)) {
            expect(TokKind::Colon, "':'");
            while (cur().kind == TokKind::Ident) {
                std::string name = eat().text;
                expect(TokKind::Equals, "'='");
                ExprPtr e = parse_expr();
                expect(TokKind::Semicolon, "';'");
                d.where_bindings.emplace_back(std::move(name), std::move(e));
            }
        }

        expect(TokKind::KwLhs, "'lhs'");
        expect(TokKind::Colon, "':'");
        d.lhs = parse_expr();
        expect(TokKind::Semicolon, "';'");

        expect(TokKind::KwRhs, "'rhs'");
        expect(TokKind::Colon, "':'");
        d.rhs = parse_expr();
        expect(TokKind::Semicolon, "';'");

        if (accept(TokKind::KwTags)) {
            expect(TokKind::Colon, "':'");
            if (cur().kind == TokKind::Ident) {
                d.tags.push_back(parse_tag());
                while (accept(TokKind::Comma)) d.tags.push_back(parse_tag());
            }
            expect(TokKind::Semicolon, "';'");
        }
        expect(TokKind::RBrace, "'}'");
        validate_decl(d);
        return d;
    }

    // tags may contain '-' (e.g. limit-q1); joined here, outside expressions
    std::string parse_tag() {
        std::string t = expect(TokKind::Ident, "tag").text;
        while (accept(TokKind::Minus)) {
            t += "-";
            t += expect(TokKind::Ident, "tag continuation").text;
        }
        return t;
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        while (cur().kind == TokKind::Plus || cur().kind == TokKind::Minus) {
            SourceSpan sp = cur().span;
            ExprKind k = eat().kind == TokKind::Plus ? ExprKind::Add : ExprKind::Sub;
            e = Expr::binary(k, std::move(e), parse_term(), sp);
        }
        return e;
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        while (cur().kind == TokKind::Star || cur().kind == TokKind::Slash) {
            SourceSpan sp = cur().span;
            ExprKind k = eat().kind == TokKind::Star ? ExprKind::Mul : ExprKind::Div;
            e = Expr::binary(k, std::move(e), parse_unary(), sp);
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (cur().kind == TokKind::Minus) {
            SourceSpan sp = eat().span;
            return Expr::neg(parse_postfix(), sp);
        }
        return parse_postfix();
    }

    static long small_int(const Token& t, long limit, const char* what) {
        if (t.text.size() > 9) throw ParseError(t.span, std::string(what) + " is too large");
        long v = std::stol(t.text);
        if (v > limit) throw ParseError(t.span, std::string(what) + " is too large");
        return v;
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_atom();
        if (cur().kind == TokKind::Caret) {
            SourceSpan sp = eat().span;
            bool negate = accept(TokKind::Minus);
            const Token& t = expect(TokKind::Int, "integer exponent");
            long k = small_int(t, 1000000, "power exponent");
            if (negate) k = -k;
            if (k == 0) throw ParseError(t.span, "power exponent must be nonzero");
            e = Expr::pow(std::move(e), k, sp);
        }
        return e;
    }

    ExprPtr parse_atom() {
        SourceSpan sp = cur().span;
        switch (cur().kind) {
            case TokKind::KwPi: eat(); return Expr::pi(sp);
            case TokKind::KwTau: eat(); return Expr::tau(sp);
            case TokKind::Int:
            case TokKind::Rational: return Expr::lit(eat().value, sp);
            case TokKind::LParen: {
                eat();
                ExprPtr e = parse_expr();
                expect(TokKind::RParen, "')'");
                return e;
            }
            case TokKind::Ident: {
                auto fn = func_table().find(cur().text);
                bool looks_like_call =
                    fn != func_table().end() && pos_ + 1 < toks_.size() &&
                    (toks_[pos_ + 1].kind == TokKind::LParen ||
                     toks_[pos_ + 1].kind == TokKind::LBracket);
                if (looks_like_call) return parse_call(fn->second, sp);
                return Expr::var(eat().text, sp);
            }
            default:
                throw ParseError(sp, "expected an expression atom, found '" + cur().text + "'");
        }
    }

    ExprPtr parse_call(const FuncInfo& info, SourceSpan sp) {
        eat(); // function name
        int base = 1;
        if (accept(TokKind::LBracket)) {
            if (!info.base_allowed) {
                throw ParseError(sp, "base-exponent bracket is not valid for this function");
            }
            const Token& t = expect(TokKind::Int, "base exponent");
            base = static_cast<int>(small_int(t, 1000, "base exponent"));
            if (base < 1) throw ParseError(t.span, "base exponent must be positive");
            expect(TokKind::RBracket, "']'");
        }
        expect(TokKind::LParen, "'('");
        ExprPtr arg;
        TauArg ta = TauArg::One;
        if (info.arity == 1) {
            arg = parse_expr();
            if (info.tau_slot && accept(TokKind::Comma)) {
                ta = parse_tau_form();
            }
        } else if (info.tau_mandatory) {
            ta = parse_tau_form();
        }
        expect(TokKind::RParen, "')'");
        return Expr::call(info.func, base, std::move(arg), ta, sp);
    }

    // one of: tau | 2*tau | tau/2 | -1/tau
    TauArg parse_tau_form() {
        SourceSpan sp = cur().span;
        ExprPtr e = parse_expr();
        if (e->kind == ExprKind::Tau) return TauArg::One;
        if (e->kind == ExprKind::Mul && e->a->kind == ExprKind::Rational &&
            e->a->rational == 2 && e->b->kind == ExprKind::Tau) {
            return TauArg::Double;
        }
        if (e->kind == ExprKind::Div && e->a->kind == ExprKind::Tau &&
            e->b->kind == ExprKind::Rational && e->b->rational == 2) {
            return TauArg::Half;
        }
        if (e->kind == ExprKind::Div && e->a->kind == ExprKind::Neg &&
            e->a->a->kind == ExprKind::Rational && e->a->a->rational == 1 &&
            e->b->kind == ExprKind::Tau) {
            return TauArg::S;
        }
        throw ParseError(sp, "tau argument must be one of: tau, 2*tau, tau/2, -1/tau");
    }

    void validate_decl(const IdentityDecl& d) {
        std::vector<std::string> known = d.vars;
        for (size_t i = 0; i < known.size(); ++i) {
            for (size_t k = i + 1; k < known.size(); ++k) {
                if (known[i] == known[k]) {
                    throw ParseError(d.lhs ? d.lhs->span : SourceSpan{},
                                     "duplicate variable " + known[i]);
                }
            }
        }
        auto is_known = [&](const std::string& n) {
            for (const auto& k : known) {
                if (k == n) return true;
            }
            return false;
        };
        auto check = [&](const ExprPtr& e, auto&& self) -> void {
            if (!e) return;
            if (e->kind == ExprKind::Var && !is_known(e->var_name)) {
                throw ParseError(e->span, "unknown variable '" + e->var_name +
                                              "' in identity \"" + d.name + "\"");
            }
            self(e->a, self);
            self(e->b, self);
        };
        for (const auto& [name, expr] : d.where_bindings) {
            check(expr, check); // bindings may reference only earlier names
            known.push_back(name);
        }
        check(d.lhs, check);
        check(d.rhs, check);
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

inline std::vector<IdentityDecl> parse(const std::string& text) {
    return Parser{text}.parse_file();
}

inline ExprPtr parse_expression(const std::string& text) {
    return Parser{text}.parse_single_expression();
}

// ---------------------------------------------------------------------------
// Pretty printer (canonical form; parse(print(x)) is structurally x)
// ---------------------------------------------------------------------------

namespace print_detail {

inline int prec(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Neg: return 3;
        case ExprKind::Pow: return 4;
        default: return 5;
    }
}

inline void print_expr(const ExprPtr& e, std::string& out);

inline void print_child(const ExprPtr& child, int min_prec, std::string& out) {
    if (prec(*child) < min_prec) {
        out += "(";
        print_expr(child, out);
        out += ")";
    } else {
        print_expr(child, out);
    }
}

inline const char* tau_text(TauArg t) {
    switch (t) {
        case TauArg::One: return "tau";
        case TauArg::Double: return "2*tau";
        case TauArg::Half: return "tau/2";
        case TauArg::S: return "-1/tau";
    }
    return "tau";
}

inline void print_expr(const ExprPtr& e, std::string& out) {
    switch (e->kind) {
        case ExprKind::Add:
            print_child(e->a, 1, out);
            out += " + ";
            print_child(e->b, 2, out);
            return;
        case ExprKind::Sub:
            print_child(e->a, 1, out);
            out += " - ";
            print_child(e->b, 2, out);
            return;
        case ExprKind::Mul:
            print_child(e->a, 2, out);
            out += " * ";
            print_child(e->b, 3, out);
            return;
        case ExprKind::Div:
            print_child(e->a, 2, out);
            out += " / ";
            print_child(e->b, 3, out);
            return;
        case ExprKind::Neg:
            out += "-";
            print_child(e->a, 4, out);
            return;
        case ExprKind::Pow:
            print_child(e->a, 5, out);
            out += "^" + std::to_string(e->pow_exp);
            return;
        case ExprKind::Var:
            out += e->var_name;
            return;
        case ExprKind::Pi:
            out += "pi";
            return;
        case ExprKind::Tau:
            out += "tau";
            return;
        case ExprKind::Rational:
            out += e->rational.get_str();
            return;
        case ExprKind::Call: {
            const FuncInfo* info = nullptr;
            std::string name;
            for (const auto& [n, fi] : func_table()) {
                if (fi.func == e->func) {
                    info = &fi;
                    name = n;
                    break;
                }
            }
            out += name;
            if (e->base_exp != 1) out += "[" + std::to_string(e->base_exp) + "]";
            out += "(";
            if (info && info->arity == 1) {
                print_expr(e->a, out);
                if (info->tau_slot && e->tau_arg != TauArg::One) {
                    out += ", ";
                    out += tau_text(e->tau_arg);
                }
            } else if (info && info->tau_mandatory) {
                out += tau_text(e->tau_arg);
            }
            out += ")";
            return;
        }
    }
}

} // namespace print_detail

inline std::string pretty_print(const ExprPtr& e) {
    std::string out;
    print_detail::print_expr(e, out);
    return out;
}

inline std::string pretty_print(const IdentityDecl& d) {
    std::string out = "identity \"" + d.name + "\" {\n  vars:";
    for (size_t i = 0; i < d.vars.size(); ++i) {
        out += (i == 0 ? " " : ", ") + d.vars[i];
    }
    out += ";\n";
    if (!d.where_bindings.empty()) {
        out += "  where:\n";
        for (const auto& [name, e] : d.where_bindings) {
            out += "    " + name + " = " + pretty_print(e) + ";\n";
        }
    }
    out += "  lhs: " + pretty_print(d.lhs) + ";\n";
    out += "  rhs: " + pretty_print(d.rhs) + ";\n";
    if (!d.tags.empty()) {
        out += "  tags:";
        for (size_t i = 0; i < d.tags.size(); ++i) {
            out += (i == 0 ? " " : ", ") + d.tags[i];
        }
        out += ";\n";
    }
    out += "}\n";
    return out;
}

inline std::string pretty_print(const std::vector<IdentityDecl>& decls) {
    std::string out;
    for (size_t i = 0; i < decls.size(); ++i) {
        if (i) out += "\n";
        out += pretty_print(decls[i]);
    }
    return out;
}

} // namespace qtheta::dsl
