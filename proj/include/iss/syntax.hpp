#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "iss/types.hpp"

namespace iss {

// Identifiers starting with u..z are variables, a..t are names, and an
// uppercase first letter marks a predicate.
inline bool is_variable_name(const std::string& s) {
    return !s.empty() && s[0] >= 'u' && s[0] <= 'z';
}
inline bool is_name(const std::string& s) {
    return !s.empty() && s[0] >= 'a' && s[0] <= 't';
}
inline bool is_predicate_name(const std::string& s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

struct Term {
    bool is_var = false;
    std::string text;

    static Term var(std::string t) { return {true, std::move(t)}; }
    static Term name(std::string t) { return {false, std::move(t)}; }
    static Term of(const std::string& t) {
        return {is_variable_name(t), t};
    }

    friend auto operator<=>(const Term&, const Term&) = default;
};

enum class Conn { atom, neg, conj, disj, impl, forall, exists };

struct Formula {
    Conn kind = Conn::atom;
    std::string pred;          // atom
    std::vector<Term> args;    // atom
    std::string var;           // forall / exists
    std::vector<Formula> kids;

    friend bool operator==(const Formula&, const Formula&) = default;
};

inline Formula atom(std::string pred, std::vector<Term> args = {}) {
    Formula f;
    f.pred = std::move(pred);
    f.args = std::move(args);
    return f;
}
inline Formula neg(Formula k) {
    Formula f;
    f.kind = Conn::neg;
    f.kids = {std::move(k)};
    return f;
}
inline Formula binary(Conn kind, Formula l, Formula r) {
    Formula f;
    f.kind = kind;
    f.kids = {std::move(l), std::move(r)};
    return f;
}
inline Formula conj(Formula l, Formula r) { return binary(Conn::conj, std::move(l), std::move(r)); }
inline Formula disj(Formula l, Formula r) { return binary(Conn::disj, std::move(l), std::move(r)); }
inline Formula impl(Formula l, Formula r) { return binary(Conn::impl, std::move(l), std::move(r)); }
inline Formula quantified(Conn kind, std::string var, Formula body) {
    Formula f;
    f.kind = kind;
    f.var = std::move(var);
    f.kids = {std::move(body)};
    return f;
}
inline Formula forall(std::string var, Formula body) {
    return quantified(Conn::forall, std::move(var), std::move(body));
}
inline Formula exists(std::string var, Formula body) {
    return quantified(Conn::exists, std::move(var), std::move(body));
}

struct Sequent {
    std::vector<Formula> premises;     // deduplicated, order preserved
    std::vector<Formula> conclusions;

    friend bool operator==(const Sequent&, const Sequent&) = default;
};

inline void collect_free_vars(const Formula& f, std::set<std::string>& bound,
                              std::set<std::string>& out) {
    switch (f.kind) {
        case Conn::atom:
            for (const Term& t : f.args)
                if (t.is_var && !bound.count(t.text)) out.insert(t.text);
            break;
        case Conn::forall:
        case Conn::exists: {
            const bool fresh = bound.insert(f.var).second;
            collect_free_vars(f.kids[0], bound, out);
            if (fresh) bound.erase(f.var);
            break;
        }
        default:
            for (const Formula& k : f.kids) collect_free_vars(k, bound, out);
    }
}

inline std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> bound, out;
    collect_free_vars(f, bound, out);
    return out;
}

inline bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

// Rewrites v, ->, and exists into the primitive connectives.
inline Formula expand_defined(const Formula& f) {
    switch (f.kind) {
        case Conn::atom:
            return f;
        case Conn::neg:
            return neg(expand_defined(f.kids[0]));
        case Conn::conj:
            return conj(expand_defined(f.kids[0]), expand_defined(f.kids[1]));
        case Conn::disj:
            return neg(conj(neg(expand_defined(f.kids[0])), neg(expand_defined(f.kids[1]))));
        case Conn::impl:
            return neg(conj(expand_defined(f.kids[0]), neg(expand_defined(f.kids[1]))));
        case Conn::forall:
            return forall(f.var, expand_defined(f.kids[0]));
        case Conn::exists:
            return neg(forall(f.var, neg(expand_defined(f.kids[0]))));
    }
    throw DomainError("unreachable formula kind");
}

// [t/a]f: replace term a by term t. Quantifiers shield their own variable;
// no renaming is performed.
inline Formula subst_term(const Formula& f, const Term& t, const Term& a) {
    switch (f.kind) {
        case Conn::atom: {
            Formula out = f;
            for (Term& arg : out.args)
                if (arg == a) arg = t;
            return out;
        }
        case Conn::forall:
        case Conn::exists: {
            if (a.is_var && a.text == f.var) return f;
            Formula out = f;
            out.kids[0] = subst_term(f.kids[0], t, a);
            return out;
        }
        default: {
            Formula out = f;
            for (Formula& k : out.kids) k = subst_term(k, t, a);
            return out;
        }
    }
}

// ---------------------------------------------------------------------------
// Concrete syntax.
//
//   formula  := impl
//   impl     := disj ("->" impl)?
//   disj     := conj ("|" conj)*
//   conj     := unary ("&" unary)*
//   unary    := "~" unary | ("forall"|"exists") var "." impl | primary
//   primary  := atom | "(" formula ")"
//   atom     := Pred "(" terms? ")" | Pred | juxtaposed (e.g. Fa, Rxy)
//   sequent  := formulas? "|-" formulas?
//
// Quantifiers scope maximally to the right; commas and turnstiles end them.
// A juxtaposed atom is a single uppercase letter followed by one-letter
// lowercase terms; longer predicate or term names need the F(a,b) form.
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
    enum Type { Ident, LParen, RParen, Comma, Tilde, Amp, Pipe, Arrow, Dot, Turnstile, End };
    Type type;
    std::string text;
    int pos;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const int pos = static_cast<int>(i);
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            out.push_back({Token::Ident, src.substr(i, j - i), pos});
            i = j;
            continue;
        }
        switch (c) {
            case '(': out.push_back({Token::LParen, "(", pos}); ++i; break;
            case ')': out.push_back({Token::RParen, ")", pos}); ++i; break;
            case ',': out.push_back({Token::Comma, ",", pos}); ++i; break;
            case '~': out.push_back({Token::Tilde, "~", pos}); ++i; break;
            case '&': out.push_back({Token::Amp, "&", pos}); ++i; break;
            case '.': out.push_back({Token::Dot, ".", pos}); ++i; break;
            case '|':
                if (i + 1 < src.size() && src[i + 1] == '-') {
                    out.push_back({Token::Turnstile, "|-", pos});
                    i += 2;
                } else {
                    out.push_back({Token::Pipe, "|", pos});
                    ++i;
                }
                break;
            case '-':
                if (i + 1 < src.size() && src[i + 1] == '>') {
                    out.push_back({Token::Arrow, "->", pos});
                    i += 2;
                } else {
                    throw ParseError("stray '-'", pos);
                }
                break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", pos);
        }
    }
    out.push_back({Token::End, "", static_cast<int>(src.size())});
    return out;
}

class Parser {
  public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    Formula formula() {
        Formula f = parse_impl();
        expect(Token::End, "end of input");
        check_arities(f);
        return f;
    }

    Sequent sequent() {
        Sequent s;
        if (peek().type != Token::Turnstile) s.premises = formula_list();
        expect(Token::Turnstile, "'|-'");
        if (peek().type != Token::End) s.conclusions = formula_list();
        expect(Token::End, "end of input");
        for (const Formula& f : s.premises) check_arities(f);
        for (const Formula& f : s.conclusions) check_arities(f);
        dedup(s.premises);
        dedup(s.conclusions);
        return s;
    }

  private:
    std::vector<Token> toks_;
    std::size_t cur_ = 0;
    std::map<std::string, int> arities_;

    const Token& peek() const { return toks_[cur_]; }
    const Token& advance() { return toks_[cur_++]; }
    bool eat(Token::Type t) {
        if (peek().type == t) {
            ++cur_;
            return true;
        }
        return false;
    }
    void expect(Token::Type t, const std::string& what) {
        if (!eat(t)) throw ParseError("expected " + what, peek().pos);
    }

    static void dedup(std::vector<Formula>& v) {
        std::vector<Formula> out;
        for (Formula& f : v)
            if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
        v = std::move(out);
    }

    std::vector<Formula> formula_list() {
        std::vector<Formula> out;
        out.push_back(parse_impl());
        while (eat(Token::Comma)) out.push_back(parse_impl());
        return out;
    }

    Formula parse_impl() {
        Formula l = parse_disj();
        if (eat(Token::Arrow)) return impl(std::move(l), parse_impl());
        return l;
    }

    Formula parse_disj() {
        Formula l = parse_conj();
        while (eat(Token::Pipe)) l = disj(std::move(l), parse_conj());
        return l;
    }

    Formula parse_conj() {
        Formula l = parse_unary();
        while (eat(Token::Amp)) l = conj(std::move(l), parse_unary());
        return l;
    }

    Formula parse_unary() {
        if (eat(Token::Tilde)) return neg(parse_unary());
        if (peek().type == Token::Ident && (peek().text == "forall" || peek().text == "exists")) {
            const bool universal = peek().text == "forall";
            advance();
            if (peek().type != Token::Ident || !is_variable_name(peek().text))
                throw ParseError("expected a variable after quantifier", peek().pos);
            std::string var = advance().text;
            expect(Token::Dot, "'.' after quantified variable");
            Formula body = parse_impl();
            return universal ? forall(std::move(var), std::move(body))
                             : exists(std::move(var), std::move(body));
        }
        return parse_primary();
    }

    Formula parse_primary() {
        if (eat(Token::LParen)) {
            Formula f = parse_impl();
            expect(Token::RParen, "')'");
            return f;
        }
        if (peek().type != Token::Ident)
            throw ParseError("expected a formula", peek().pos);
        const Token tok = advance();
        if (!is_predicate_name(tok.text))
            throw ParseError("expected a predicate (uppercase identifier)", tok.pos);
        if (eat(Token::LParen)) {
            std::vector<Term> args;
            if (!eat(Token::RParen)) {
                args.push_back(term());
                while (eat(Token::Comma)) args.push_back(term());
                expect(Token::RParen, "')'");
            }
            return atom(tok.text, std::move(args));
        }
        if (tok.text.size() == 1) return atom(tok.text);
        // Juxtaposed form: one-letter predicate, one-letter terms.
        std::vector<Term> args;
        for (std::size_t k = 1; k < tok.text.size(); ++k) {
            const char c = tok.text[k];
            if (!std::islower(static_cast<unsigned char>(c)))
                throw ParseError("cannot read '" + tok.text +
                                     "' as a juxtaposed atom; use the F(t1,...,tn) form",
                                 tok.pos);
            args.push_back(Term::of(std::string(1, c)));
        }
        return atom(tok.text.substr(0, 1), std::move(args));
    }

    Term term() {
        if (peek().type != Token::Ident || is_predicate_name(peek().text))
            throw ParseError("expected a term (lowercase identifier)", peek().pos);
        return Term::of(advance().text);
    }

    void check_arities(const Formula& f) {
        if (f.kind == Conn::atom) {
            auto [it, fresh] = arities_.emplace(f.pred, static_cast<int>(f.args.size()));
            if (!fresh && it->second != static_cast<int>(f.args.size()))
                throw ParseError("arity mismatch: predicate " + f.pred + " used with " +
                                 std::to_string(f.args.size()) + " and " +
                                 std::to_string(it->second) + " arguments");
        }
        for (const Formula& k : f.kids) check_arities(k);
    }
};

inline int prec(const Formula& f) {
    switch (f.kind) {
        case Conn::forall:
        case Conn::exists: return 1;
        case Conn::impl: return 1;
        case Conn::disj: return 2;
        case Conn::conj: return 3;
        case Conn::neg: return 4;
        case Conn::atom: return 5;
    }
    return 5;
}

inline void render(const Formula& f, int min_prec, std::string& out) {
    const bool parens = prec(f) < min_prec;
    if (parens) out += '(';
    switch (f.kind) {
        case Conn::atom: {
            bool juxta = f.pred.size() == 1 && !f.args.empty();
            for (const Term& t : f.args)
                if (t.text.size() != 1) juxta = false;
            out += f.pred;
            if (juxta) {
                for (const Term& t : f.args) out += t.text;
            } else if (!f.args.empty()) {
                out += '(';
                for (std::size_t i = 0; i < f.args.size(); ++i) {
                    if (i) out += ',';
                    out += f.args[i].text;
                }
                out += ')';
            }
            break;
        }
        case Conn::neg:
            out += '~';
            render(f.kids[0], 4, out);
            break;
        case Conn::conj:
            render(f.kids[0], 3, out);
            out += " & ";
            render(f.kids[1], 4, out);
            break;
        case Conn::disj:
            render(f.kids[0], 2, out);
            out += " | ";
            render(f.kids[1], 3, out);
            break;
        case Conn::impl:
            render(f.kids[0], 2, out);
            out += " -> ";
            render(f.kids[1], 1, out);
            break;
        case Conn::forall:
        case Conn::exists:
            out += f.kind == Conn::forall ? "forall " : "exists ";
            out += f.var;
            out += ". ";
            render(f.kids[0], 0, out);
            break;
    }
    if (parens) out += ')';
}

}  // namespace detail

inline Formula parse_formula(const std::string& text) {
    return detail::Parser(text).formula();
}

inline Formula parse_sentence(const std::string& text) {
    Formula f = parse_formula(text);
    auto fv = free_vars(f);
    if (!fv.empty())
        throw ParseError("unbound variable '" + *fv.begin() + "' in a claimed sentence");
    return f;
}

inline Sequent parse_sequent(const std::string& text) {
    Sequent s = detail::Parser(text).sequent();
    for (const Formula& f : s.premises)
        if (!is_sentence(f))
            throw ParseError("open formula on the left of '|-': " + [&] {
                std::string r;
                detail::render(f, 0, r);
                return r;
            }());
    for (const Formula& f : s.conclusions)
        if (!is_sentence(f))
            throw ParseError("open formula on the right of '|-': " + [&] {
                std::string r;
                detail::render(f, 0, r);
                return r;
            }());
    return s;
}

inline std::string to_string(const Formula& f) {
    std::string out;
    detail::render(f, 0, out);
    return out;
}

inline std::string to_string(const Sequent& s) {
    std::string out;
    for (std::size_t i = 0; i < s.premises.size(); ++i) {
        if (i) out += ", ";
        out += to_string(s.premises[i]);
    }
    if (!s.premises.empty()) out += ' ';
    out += "|-";
    for (std::size_t i = 0; i < s.conclusions.size(); ++i) {
        out += i ? ", " : " ";
        out += to_string(s.conclusions[i]);
    }
    return out;
}

}  // namespace iss
