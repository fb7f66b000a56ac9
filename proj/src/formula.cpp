#include "padiq/formula.hpp"

#include "padiq/error.hpp"

#include <algorithm>
#include <sstream>

namespace padiq {

// ---------------------------------------------------------------- PrimeSet

PrimeSet::PrimeSet(std::vector<Int> primes) : primes_(std::move(primes)) {
    if (primes_.empty()) throw DomainError("prime set must be nonempty");
    for (const Int& p : primes_)
        if (!is_prime(p)) throw DomainError(p.str() + " is not prime");
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

PrimeSet PrimeSet::parse(const std::string& csv) {
    std::vector<Int> ps;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) continue;
        ps.push_back(parse_int(item));
    }
    return PrimeSet(std::move(ps));
}

bool PrimeSet::contains(const Int& p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

std::string PrimeSet::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < primes_.size(); ++i) out += (i ? "," : "") + primes_[i].str();
    return out;
}

// ------------------------------------------------------------------- Atoms

Atom Atom::eq(Term t) {
    Atom a;
    a.kind = AtomKind::Eq;
    a.lhs = std::move(t);
    return a;
}

Atom Atom::div(Int m, Term t) {
    Atom a;
    a.kind = AtomKind::Div;
    a.modulus = std::move(m);
    a.lhs = std::move(t);
    return a;
}

Atom Atom::val_le(Int p, std::int64_t k, Term t1, Term t2) {
    Atom a;
    a.kind = AtomKind::ValLe;
    a.prime = std::move(p);
    a.offset = k;
    a.lhs = std::move(t1);
    a.rhs = std::move(t2);
    return a;
}

namespace {

template <class T>
std::strong_ordering cmp_int(const T& a, const T& b) {
    if (a == b) return std::strong_ordering::equal;
    return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) return c;
    if (auto c = cmp_int(a.prime, b.prime); c != 0) return c;
    if (auto c = cmp_int(a.modulus, b.modulus); c != 0) return c;
    if (auto c = a.offset <=> b.offset; c != 0) return c;
    if (auto c = a.lhs <=> b.lhs; c != 0) return c;
    return a.rhs <=> b.rhs;
}

// ---------------------------------------------------------------- Formula

Formula::Formula() : Formula(raw_true()) {}

bool Formula::is_literal() const {
    return kind() == Kind::Atom || (kind() == Kind::Not && child().kind() == Kind::Atom);
}

Formula Formula::raw_true() {
    static const Formula t(std::make_shared<const Node>(Node{Kind::True, {}, {}, {}}));
    return t;
}

Formula Formula::raw_false() {
    static const Formula f(std::make_shared<const Node>(Node{Kind::False, {}, {}, {}}));
    return f;
}

Formula Formula::raw_atom(padiq::Atom a) {
    return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}, {}}));
}

Formula Formula::raw_not(Formula f) {
    return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {std::move(f)}, {}}));
}

Formula Formula::raw_nary(Kind k, std::vector<Formula> kids) {
    return Formula(std::make_shared<const Node>(Node{k, {}, std::move(kids), {}}));
}

Formula Formula::raw_quant(Kind k, std::string var, Formula body) {
    return Formula(std::make_shared<const Node>(Node{k, {}, {std::move(body)}, std::move(var)}));
}

namespace {

int rank(const Formula& f) {
    switch (f.kind()) {
        case Kind::True: return 0;
        case Kind::False: return 1;
        case Kind::Atom: return 2;
        case Kind::Not: return f.child().kind() == Kind::Atom ? 2 : 7;
        case Kind::And: return 3;
        case Kind::Or: return 4;
        case Kind::Exists: return 5;
        case Kind::Forall: return 6;
    }
    return 8;
}

}  // namespace

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    int ra = rank(a), rb = rank(b);
    if (ra != rb) return ra <=> rb;
    switch (ra) {
        case 0:
        case 1: return std::strong_ordering::equal;
        case 2: {
            const Atom& x = a.kind() == Kind::Atom ? a.atom() : a.child().atom();
            const Atom& y = b.kind() == Kind::Atom ? b.atom() : b.child().atom();
            if (auto c = x <=> y; c != 0) return c;
            return (a.kind() == Kind::Not) <=> (b.kind() == Kind::Not);
        }
        case 5:
        case 6:
            if (auto c = a.var() <=> b.var(); c != 0) return c;
            return a.child() <=> b.child();
        default: {
            const auto& ka = a.children();
            const auto& kb = b.children();
            for (std::size_t i = 0; i < ka.size() && i < kb.size(); ++i)
                if (auto c = ka[i] <=> kb[i]; c != 0) return c;
            return ka.size() <=> kb.size();
        }
    }
}

// --------------------------------------------------------------- builders

namespace {

Term divide_term(const Term& t, const Int& g) {
    Term r = Term::constant(t.constant_part() / g);
    for (const auto& [v, c] : t.coefficients()) r = r + Term::variable(v, c / g);
    return r;
}

bool val_le_holds(const Int& p, std::int64_t k, const Int& a, const Int& b) {
    return valuation(p, a).plus(k) <= valuation(p, b);
}

}  // namespace

Formula make_true() { return Formula::raw_true(); }
Formula make_false() { return Formula::raw_false(); }
Formula make_bool(bool b) { return b ? make_true() : make_false(); }

Formula make_atom(const Atom& a) {
    switch (a.kind) {
        case AtomKind::Eq: {
            const Term& t = a.lhs;
            if (t.is_ground()) return make_bool(t.constant_part() == 0);
            Int g = t.coeff_content();
            if (t.constant_part() % g != 0) return make_false();
            return Formula::raw_atom(Atom::eq(divide_term(t, g).sign_normalized()));
        }
        case AtomKind::Div: {
            const Int& m = a.modulus;
            if (m < 1) throw DomainError("modulus must be >= 1, got " + m.str());
            Term t = Term::constant(a.lhs.constant_part());
            for (const auto& [v, c] : a.lhs.coefficients())
                if (c % m != 0) t = t + Term::variable(v, c);
            if (t.is_ground()) return make_bool(t.constant_part() % m == 0);
            t = t.sign_normalized();
            Int g = gcd(m, t.coeff_content());
            if (t.constant_part() % g != 0) return make_false();
            Int m2 = m / g;
            if (m2 == 1) return make_true();
            return Formula::raw_atom(Atom::div(m2, divide_term(t, g)));
        }
        case AtomKind::ValLe: {
            if (a.prime < 2) throw DomainError("valuation prime must be >= 2");
            const Int& p = a.prime;
            std::int64_t k = a.offset;
            Term t1 = a.lhs.sign_normalized();
            Term t2 = a.rhs.sign_normalized();
            if (t1.is_ground() && t2.is_ground())
                return make_bool(val_le_holds(p, k, t1.constant_part(), t2.constant_part()));
            if (t1.is_ground()) {
                if (t1.is_zero()) return make_eq(t2);
                k += valuation_nz(p, t1.constant_part());
                if (k <= 0) return make_true();
                return Formula::raw_atom(Atom::val_le(p, k, Term::constant(1), t2));
            }
            if (t2.is_ground()) {
                if (t2.is_zero()) return make_true();
                k -= valuation_nz(p, t2.constant_part());
                if (k > 0) return make_false();
                return Formula::raw_atom(Atom::val_le(p, k, t1, Term::constant(1)));
            }
            if (t1 == t2) return k <= 0 ? make_true() : make_eq(t1);
            return Formula::raw_atom(Atom::val_le(p, k, t1, t2));
        }
    }
    return make_true();
}

Formula make_eq(const Term& t) { return make_atom(Atom::eq(t)); }
Formula make_ne(const Term& t) { return make_not(make_eq(t)); }
Formula make_div(const Int& m, const Term& t) { return make_atom(Atom::div(m, t)); }
Formula make_val_le(const Int& p, std::int64_t k, const Term& t1, const Term& t2) {
    return make_atom(Atom::val_le(p, k, t1, t2));
}

Formula make_not(const Formula& f) {
    switch (f.kind()) {
        case Kind::True: return make_false();
        case Kind::False: return make_true();
        case Kind::Not: return f.child();
        default: return Formula::raw_not(f);
    }
}

namespace {

Formula make_nary(Kind k, std::vector<Formula> kids) {
    const Kind unit = k == Kind::And ? Kind::True : Kind::False;
    const Kind zero = k == Kind::And ? Kind::False : Kind::True;
    std::vector<Formula> flat;
    flat.reserve(kids.size());
    for (auto& c : kids) {
        if (c.kind() == unit) continue;
        if (c.kind() == zero) return c;
        if (c.kind() == k)
            flat.insert(flat.end(), c.children().begin(), c.children().end());
        else
            flat.push_back(std::move(c));
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    for (const auto& c : flat)
        if (c.kind() == Kind::Not && std::binary_search(flat.begin(), flat.end(), c.child()))
            return k == Kind::And ? make_false() : make_true();
    if (flat.empty()) return k == Kind::And ? make_true() : make_false();
    if (flat.size() == 1) return flat.front();
    return Formula::raw_nary(k, std::move(flat));
}

}  // namespace

Formula make_and(std::vector<Formula> kids) { return make_nary(Kind::And, std::move(kids)); }
Formula make_or(std::vector<Formula> kids) { return make_nary(Kind::Or, std::move(kids)); }
Formula make_and(const Formula& a, const Formula& b) { return make_and(std::vector<Formula>{a, b}); }
Formula make_or(const Formula& a, const Formula& b) { return make_or(std::vector<Formula>{a, b}); }
Formula make_implies(const Formula& a, const Formula& b) { return make_or(make_not(a), b); }

Formula make_exists(const std::string& v, const Formula& body) {
    if (!mentions(body, v)) return body;
    return Formula::raw_quant(Kind::Exists, v, body);
}

Formula make_forall(const std::string& v, const Formula& body) {
    if (!mentions(body, v)) return body;
    return Formula::raw_quant(Kind::Forall, v, body);
}

Formula canonicalize(const Formula& f) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False: return f;
        case Kind::Atom: return make_atom(f.atom());
        case Kind::Not: return make_not(canonicalize(f.child()));
        case Kind::And:
        case Kind::Or: {
            std::vector<Formula> kids;
            for (const auto& c : f.children()) kids.push_back(canonicalize(c));
            return f.kind() == Kind::And ? make_and(std::move(kids)) : make_or(std::move(kids));
        }
        case Kind::Exists: return make_exists(f.var(), canonicalize(f.child()));
        case Kind::Forall: return make_forall(f.var(), canonicalize(f.child()));
    }
    return f;
}

// ------------------------------------------------------------- traversals

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False: return;
        case Kind::Atom: {
            std::set<std::string> vs;
            f.atom().lhs.free_vars(vs);
            f.atom().rhs.free_vars(vs);
            for (const auto& v : vs)
                if (!bound.count(v)) out.insert(v);
            return;
        }
        case Kind::Exists:
        case Kind::Forall: {
            bool fresh = bound.insert(f.var()).second;
            collect_free(f.child(), bound, out);
            if (fresh) bound.erase(f.var());
            return;
        }
        default:
            for (const auto& c : f.children()) collect_free(c, bound, out);
    }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

bool mentions(const Formula& f, const std::string& v) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False: return false;
        case Kind::Atom: return f.atom().mentions(v);
        case Kind::Exists:
        case Kind::Forall: return f.var() != v && mentions(f.child(), v);
        default:
            for (const auto& c : f.children())
                if (mentions(c, v)) return true;
            return false;
    }
}

bool is_quantifier_free(const Formula& f) { return quantifier_count(f) == 0; }

std::size_t quantifier_count(const Formula& f) {
    std::size_t n = (f.kind() == Kind::Exists || f.kind() == Kind::Forall) ? 1 : 0;
    for (const auto& c : f.children()) n += quantifier_count(c);
    return n;
}

std::size_t node_count(const Formula& f) {
    std::size_t n = 1;
    for (const auto& c : f.children()) n += node_count(c);
    return n;
}

Formula substitute(const Formula& f, const std::string& v, const Term& t) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False: return f;
        case Kind::Atom: {
            if (!f.atom().mentions(v)) return f;
            Atom a = f.atom();
            a.lhs = a.lhs.substitute(v, t);
            a.rhs = a.rhs.substitute(v, t);
            return make_atom(a);
        }
        case Kind::Not: return make_not(substitute(f.child(), v, t));
        case Kind::And:
        case Kind::Or: {
            std::vector<Formula> kids;
            for (const auto& c : f.children()) kids.push_back(substitute(c, v, t));
            return f.kind() == Kind::And ? make_and(std::move(kids)) : make_or(std::move(kids));
        }
        case Kind::Exists:
        case Kind::Forall: {
            if (f.var() == v || !mentions(f.child(), v)) return f;
            if (t.mentions(f.var()))
                throw DomainError("substituting for '" + v + "' would capture '" + f.var() + "'");
            Formula body = substitute(f.child(), v, t);
            return f.kind() == Kind::Exists ? make_exists(f.var(), body) : make_forall(f.var(), body);
        }
    }
    return f;
}

Formula substitute_all(const Formula& f, const Assignment& values) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False: return f;
        case Kind::Atom: {
            Atom a = f.atom();
            a.lhs = a.lhs.substitute(values);
            a.rhs = a.rhs.substitute(values);
            return make_atom(a);
        }
        case Kind::Not: return make_not(substitute_all(f.child(), values));
        case Kind::And:
        case Kind::Or: {
            std::vector<Formula> kids;
            for (const auto& c : f.children()) kids.push_back(substitute_all(c, values));
            return f.kind() == Kind::And ? make_and(std::move(kids)) : make_or(std::move(kids));
        }
        case Kind::Exists:
        case Kind::Forall: {
            Formula body = f.child();
            if (values.count(f.var())) {
                Assignment inner = values;
                inner.erase(f.var());
                body = substitute_all(body, inner);
            } else {
                body = substitute_all(body, values);
            }
            return f.kind() == Kind::Exists ? make_exists(f.var(), body) : make_forall(f.var(), body);
        }
    }
    return f;
}

// ------------------------------------------------------------------- NNF

Formula negate_literal(const Formula& lit) {
    if (lit.kind() == Kind::Not) return lit.child();
    if (lit.kind() != Kind::Atom) return make_not(lit);
    const Atom& a = lit.atom();
    if (a.kind != AtomKind::ValLe) return make_not(lit);
    // not (v(t1) + k <= v(t2))  <=>  t2 != 0  and  v(t2) + (1-k) <= v(t1)
    Formula flipped = make_val_le(a.prime, 1 - a.offset, a.rhs, a.lhs);
    if (a.lhs.is_ground() && !a.lhs.is_zero()) return flipped;
    return make_and(flipped, make_ne(a.rhs));
}

namespace {

Formula nnf(const Formula& f, bool neg) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False: return neg ? make_not(f) : f;
        case Kind::Atom: return neg ? negate_literal(f) : f;
        case Kind::Not: return nnf(f.child(), !neg);
        case Kind::And:
        case Kind::Or: {
            std::vector<Formula> kids;
            for (const auto& c : f.children()) kids.push_back(nnf(c, neg));
            bool conj = (f.kind() == Kind::And) != neg;
            return conj ? make_and(std::move(kids)) : make_or(std::move(kids));
        }
        case Kind::Exists:
        case Kind::Forall: {
            Formula body = nnf(f.child(), neg);
            bool ex = (f.kind() == Kind::Exists) != neg;
            return ex ? make_exists(f.var(), body) : make_forall(f.var(), body);
        }
    }
    return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

// ------------------------------------------------------------------- DNF

namespace {

void flatten_conj(const Formula& c, std::vector<Formula>& out) {
    if (c.kind() == Kind::And)
        out.insert(out.end(), c.children().begin(), c.children().end());
    else if (c.kind() != Kind::True)
        out.push_back(c);
}

std::vector<Formula> dnf(const Formula& f, std::size_t cap) {
    switch (f.kind()) {
        case Kind::True: return {make_true()};
        case Kind::False: return {};
        case Kind::Atom: return {f};
        case Kind::Not:
            if (f.child().kind() != Kind::Atom) return dnf(to_nnf(f), cap);
            return {f};
        case Kind::Or: {
            std::vector<Formula> out;
            std::size_t lits = 0;
            for (const auto& c : f.children()) {
                for (auto& d : dnf(c, cap)) {
                    if (d.is_true()) return {make_true()};
                    lits += d.kind() == Kind::And ? d.children().size() : 1;
                    if (lits > cap) throw ResourceError("DNF literal cap exceeded");
                    out.push_back(std::move(d));
                }
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
        }
        case Kind::And: {
            std::vector<Formula> acc{make_true()};
            for (const auto& c : f.children()) {
                std::vector<Formula> d = dnf(c, cap);
                std::vector<Formula> next;
                std::size_t lits = 0;
                for (const auto& a : acc)
                    for (const auto& b : d) {
                        Formula m = make_and(a, b);
                        if (m.is_false()) continue;
                        lits += m.kind() == Kind::And ? m.children().size() : 1;
                        if (lits > cap) throw ResourceError("DNF literal cap exceeded");
                        next.push_back(std::move(m));
                    }
                std::sort(next.begin(), next.end());
                next.erase(std::unique(next.begin(), next.end()), next.end());
                acc = std::move(next);
                if (acc.empty()) break;
            }
            return acc;
        }
        case Kind::Exists:
        case Kind::Forall: throw DomainError("DNF of a quantified formula");
    }
    return {};
}

}  // namespace

std::vector<std::vector<Formula>> to_dnf(const Formula& f, std::size_t literal_cap) {
    std::vector<std::vector<Formula>> out;
    for (const auto& c : dnf(to_nnf(f), literal_cap)) {
        std::vector<Formula> lits;
        flatten_conj(c, lits);
        out.push_back(std::move(lits));
    }
    return out;
}

}  // namespace padiq
