#include "padiq/syntax.hpp"

#include "padiq/error.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <regex>

namespace padiq {

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
    Tok type;
    std::string text;
    std::size_t line;
    std::size_t col;
};

std::vector<Token> lex(const std::string& s) {
    static const char* syms[] = {"<->", "->", "&&", "||", "!=", "<=", ">=", "=", "<", ">",
                                 "!",   "(",  ")",  ".",  ",",  "+",  "-",  "*"};
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t j = 0; j < n; ++j, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        unsigned char c = s[i];
        if (std::isspace(c)) {
            advance(1);
            continue;
        }
        std::size_t l = line, k = col;
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' ||
                                    s[j] == '\''))
                ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), l, k});
            advance(j - i);
            continue;
        }
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Int, s.substr(i, j - i), l, k});
            advance(j - i);
            continue;
        }
        bool matched = false;
        for (const char* sym : syms) {
            std::string_view sv(sym);
            if (s.compare(i, sv.size(), sv) == 0) {
                out.push_back({Tok::Sym, std::string(sv), l, k});
                advance(sv.size());
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError(std::string("unexpected character '") + s[i] + "'", l, k);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

bool is_indexed(const std::string& id, char head) {
    if (id.size() < 2 || id[0] != head) return false;
    for (std::size_t i = 1; i < id.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
    return true;
}

bool is_reserved(const std::string& id) {
    return id == "E" || id == "A" || id == "true" || id == "false" || is_indexed(id, 'v') ||
           is_indexed(id, 'D');
}

class Parser {
public:
    Parser(const std::string& text, const PrimeSet& primes) : toks_(lex(text)), primes_(primes) {}

    Formula run() {
        Formula f = formula();
        if (peek().type != Tok::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

    std::set<std::string> identifiers() const {
        std::set<std::string> ids;
        for (const auto& t : toks_)
            if (t.type == Tok::Ident && !is_reserved(t.text)) ids.insert(t.text);
        return ids;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool is_sym(const std::string& s, std::size_t ahead = 0) const {
        return peek(ahead).type == Tok::Sym && peek(ahead).text == s;
    }
    bool accept(const std::string& s) {
        if (!is_sym(s)) return false;
        ++pos_;
        return true;
    }
    void expect(const std::string& s) {
        if (!accept(s)) fail("expected '" + s + "'" + found());
    }
    std::string found() const {
        return peek().type == Tok::End ? " at end of input" : ", found '" + peek().text + "'";
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, peek().line, peek().col);
    }

    bool at_quantifier() const {
        return peek().type == Tok::Ident && (peek().text == "E" || peek().text == "A") &&
               peek(1).type == Tok::Ident;
    }

    Formula formula() {
        if (at_quantifier()) return quantified();
        Formula lhs = disj();
        if (accept("->")) return make_implies(lhs, formula());
        if (accept("<->")) {
            Formula rhs = formula();
            return make_and(make_implies(lhs, rhs), make_implies(rhs, lhs));
        }
        return lhs;
    }

    Formula quantified() {
        bool ex = next().text == "E";
        std::vector<std::string> vars;
        do {
            if (peek().type != Tok::Ident || is_reserved(peek().text))
                fail("expected a variable name" + found());
            vars.push_back(next().text);
        } while (accept(","));
        expect(".");
        Formula body = formula();
        for (auto it = vars.rbegin(); it != vars.rend(); ++it)
            body = ex ? make_exists(*it, body) : make_forall(*it, body);
        // keep vacuous binders out of the tree, but remember them for renaming
        return body;
    }

    Formula disj() {
        std::vector<Formula> kids{conj()};
        while (accept("||")) kids.push_back(conj());
        return kids.size() == 1 ? kids.front() : make_or(std::move(kids));
    }

    Formula conj() {
        std::vector<Formula> kids{lit()};
        while (accept("&&")) kids.push_back(lit());
        return kids.size() == 1 ? kids.front() : make_and(std::move(kids));
    }

    Formula lit() {
        if (accept("!")) return make_not(lit());
        if (at_quantifier()) return quantified();
        if (accept("(")) {
            Formula f = formula();
            expect(")");
            return f;
        }
        if (peek().type == Tok::Ident && peek().text == "true") {
            next();
            return make_true();
        }
        if (peek().type == Tok::Ident && peek().text == "false") {
            next();
            return make_false();
        }
        return atom();
    }

    Int index_of(const Token& t) { return Int(t.text.substr(1)); }

    Int prime_index() {
        Token t = peek();
        Int p = index_of(t);
        if (!primes_.contains(p))
            throw ParseError("unknown prime " + p.str() + " (prime set is {" + primes_.to_string() + "})",
                             t.line, t.col);
        next();
        return p;
    }

    Term paren_term() {
        expect("(");
        Term t = term();
        expect(")");
        return t;
    }

    Formula atom() {
        const Token& t = peek();
        if (t.type == Tok::Ident && is_indexed(t.text, 'D') && is_sym("(", 1)) {
            Int m = index_of(t);
            if (m < 1) fail("modulus must be >= 1");
            next();
            return make_div(m, paren_term());
        }
        if (t.type == Tok::Ident && is_indexed(t.text, 'v') && is_sym("(", 1)) return valuation_atom();
        Term lhs = term();
        if (accept("=")) return make_eq(lhs - term());
        if (accept("!=")) return make_ne(lhs - term());
        fail("expected '=' or '!='" + found());
    }

    Formula valuation_atom() {
        Int p = prime_index();
        Term t1 = paren_term();
        std::string cmp;
        for (const char* c : {"<=", "<", ">=", ">", "="})
            if (is_sym(c)) cmp = c;
        if (cmp.empty()) fail("expected a comparison" + found());
        next();
        if (peek().type == Tok::Ident && is_indexed(peek().text, 'v') && is_sym("(", 1)) {
            Token pt = peek();
            Int p2 = prime_index();
            if (p2 != p) throw ParseError("mixed primes in one comparison", pt.line, pt.col);
            Term t2 = paren_term();
            std::int64_t j = 0;
            if (is_sym("+") || is_sym("-")) {
                bool neg = next().text == "-";
                j = integer_literal();
                if (neg) j = -j;
            }
            // v(t1) ? v(t2) + j
            Formula le = make_val_le(p, -j, t1, t2);  // v(t1) <= v(t2) + j
            Formula ge = make_val_le(p, j, t2, t1);   // v(t1) >= v(t2) + j
            if (cmp == "<=") return le;
            if (cmp == ">=") return ge;
            if (cmp == "<") return to_nnf(make_not(ge));
            if (cmp == ">") return to_nnf(make_not(le));
            return make_and(le, ge);
        }
        std::int64_t c = signed_integer();
        Term one = Term::constant(1);
        Formula ge = make_val_le(p, c, one, t1);   // v(t1) >= c
        Formula le = make_val_le(p, -c, t1, one);  // v(t1) <= c
        if (cmp == ">=") return ge;
        if (cmp == ">") return make_val_le(p, c + 1, one, t1);
        if (cmp == "<=") return le;
        if (cmp == "<") return make_val_le(p, 1 - c, t1, one);
        return make_and(ge, le);
    }

    std::int64_t integer_literal() {
        if (peek().type != Tok::Int) fail("expected an integer" + found());
        Int v(next().text);
        if (v > Int(1) << 40) fail("integer offset too large");
        return static_cast<std::int64_t>(v);
    }

    std::int64_t signed_integer() {
        bool neg = accept("-");
        std::int64_t v = integer_literal();
        return neg ? -v : v;
    }

    Term term() {
        bool neg = accept("-");
        Term t = monomial();
        if (neg) t = -t;
        while (is_sym("+") || is_sym("-")) {
            bool minus = next().text == "-";
            Term m = monomial();
            t = minus ? t - m : t + m;
        }
        return t;
    }

    Term monomial() {
        if (peek().type == Tok::Int) {
            Int c(next().text);
            if (accept("*")) return Term::variable(variable_name(), c);
            return Term::constant(c);
        }
        std::string v = variable_name();
        if (accept("*")) {
            if (peek().type != Tok::Int) fail("expected an integer coefficient" + found());
            return Term::variable(v, Int(next().text));
        }
        return Term::variable(v);
    }

    std::string variable_name() {
        if (peek().type != Tok::Ident || is_reserved(peek().text))
            fail("expected a term" + found());
        return next().text;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const PrimeSet& primes_;
};

Term rename_term(const Term& t, const std::map<std::string, std::string>& names) {
    Term r = Term::constant(t.constant_part());
    for (const auto& [v, c] : t.coefficients()) {
        auto it = names.find(v);
        r = r + Term::variable(it == names.end() ? v : it->second, c);
    }
    return r;
}

class Renamer {
public:
    Renamer(std::set<std::string> free, std::set<std::string> taken)
        : free_(std::move(free)), taken_(std::move(taken)) {}

    Formula walk(const Formula& f, std::map<std::string, std::string> names) {
        switch (f.kind()) {
            case Kind::True:
            case Kind::False: return f;
            case Kind::Atom: {
                Atom a = f.atom();
                a.lhs = rename_term(a.lhs, names);
                a.rhs = rename_term(a.rhs, names);
                return make_atom(a);
            }
            case Kind::Not: return make_not(walk(f.child(), names));
            case Kind::And:
            case Kind::Or: {
                std::vector<Formula> kids;
                for (const auto& c : f.children()) kids.push_back(walk(c, names));
                return f.kind() == Kind::And ? make_and(std::move(kids)) : make_or(std::move(kids));
            }
            case Kind::Exists:
            case Kind::Forall: {
                std::string v = f.var();
                std::string fresh = v;
                if (free_.count(v) || binders_.count(v)) {
                    for (int i = 1;; ++i) {
                        fresh = v + "_" + std::to_string(i);
                        if (!taken_.count(fresh) && !binders_.count(fresh)) break;
                    }
                }
                binders_.insert(fresh);
                names[v] = fresh;
                Formula body = walk(f.child(), names);
                return f.kind() == Kind::Exists ? make_exists(fresh, body) : make_forall(fresh, body);
            }
        }
        return f;
    }

private:
    std::set<std::string> free_;
    std::set<std::string> taken_;
    std::set<std::string> binders_;
};

// ---------------------------------------------------------------- render

enum Prec { kTop = 0, kOr = 1, kAnd = 2, kUnary = 3 };

std::string render_at(const Formula& f, int prec);

std::string valuation(const Int& p, const Term& t) { return "v" + p.str() + "(" + t.to_string() + ")"; }

std::string render_eq_sides(const Term& t, const char* op) {
    Term lhs, rhs = Term::constant(-t.constant_part());
    for (const auto& [v, c] : t.coefficients()) {
        if (c > 0)
            lhs = lhs + Term::variable(v, c);
        else
            rhs = rhs + Term::variable(v, -c);
    }
    return lhs.to_string() + " " + op + " " + rhs.to_string();
}

std::string render_at(const Formula& f, int prec) {
    auto wrap = [&](std::string s, int own) { return own < prec ? "(" + s + ")" : s; };
    switch (f.kind()) {
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::Atom: return wrap(render(f.atom()), kUnary);
        case Kind::Not: {
            const Formula& c = f.child();
            if (c.kind() == Kind::Atom && c.atom().kind == AtomKind::Eq)
                return render_eq_sides(c.atom().lhs, "!=");
            if (c.kind() == Kind::Atom && c.atom().kind == AtomKind::Div) return "!" + render(c.atom());
            return "!(" + render_at(c, kTop) + ")";
        }
        case Kind::And:
        case Kind::Or: {
            bool conj = f.kind() == Kind::And;
            int own = conj ? kAnd : kOr;
            std::string out;
            for (std::size_t i = 0; i < f.children().size(); ++i) {
                const Formula& c = f.children()[i];
                std::string s = render_at(c, own);
                if (c.kind() == Kind::Exists || c.kind() == Kind::Forall) s = "(" + s + ")";
                out += (i ? (conj ? " && " : " || ") : "") + s;
            }
            return wrap(out, own);
        }
        case Kind::Exists:
        case Kind::Forall: {
            std::string head = f.kind() == Kind::Exists ? "E " : "A ";
            return wrap(head + f.var() + ". " + render_at(f.child(), kTop), kTop);
        }
    }
    return "";
}

}  // namespace

Formula parse(const std::string& text, const PrimeSet& primes) {
    Parser parser(text, primes);
    Formula raw = parser.run();
    Renamer renamer(free_vars(raw), parser.identifiers());
    return renamer.walk(raw, {});
}

std::string render(const Atom& a) {
    switch (a.kind) {
        case AtomKind::Eq: return render_eq_sides(a.lhs, "=");
        case AtomKind::Div: return "D" + a.modulus.str() + "(" + a.lhs.to_string() + ")";
        case AtomKind::ValLe: {
            const Int& p = a.prime;
            if (a.lhs.is_one()) return valuation(p, a.rhs) + " >= " + std::to_string(a.offset);
            if (a.rhs.is_one()) return valuation(p, a.lhs) + " <= " + std::to_string(-a.offset);
            if (a.offset == 0) return valuation(p, a.lhs) + " <= " + valuation(p, a.rhs);
            std::string off = a.offset > 0 ? " + " + std::to_string(a.offset)
                                           : " - " + std::to_string(-a.offset);
            return valuation(p, a.rhs) + " >= " + valuation(p, a.lhs) + off;
        }
    }
    return "";
}

std::string render(const Formula& f) { return render_at(f, kTop); }

}  // namespace padiq
