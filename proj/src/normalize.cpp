#include "padiq/normalize.hpp"

#include "padiq/error.hpp"
#include "padiq/syntax.hpp"

#include <algorithm>
#include <functional>

namespace padiq {

std::string ValExpr::to_string(const Int& p) const {
    if (is_constant()) return std::to_string(offset);
    std::string s = "v" + p.str() + "(" + term->to_string() + ")";
    if (offset > 0) s += " + " + std::to_string(offset);
    if (offset < 0) s += " - " + std::to_string(-offset);
    return s;
}

Formula valuation_at_least(const Int& p, const Term& t, const ValExpr& r) {
    if (r.is_constant()) return r.offset <= 0 ? make_true() : make_div(ipow(p, r.offset), t);
    return make_val_le(p, r.offset, *r.term, t);
}

Formula radius_le(const Int& p, const ValExpr& a, const ValExpr& b) {
    static const Term one = Term::constant(1);
    if (a.is_constant() && b.is_constant()) return make_bool(a.offset <= b.offset);
    return make_val_le(p, a.offset - b.offset, a.is_constant() ? one : *a.term,
                       b.is_constant() ? one : *b.term);
}

Formula radius_eq(const Int& p, const ValExpr& a, const ValExpr& b) {
    return make_and(radius_le(p, a, b), radius_le(p, b, a));
}

Linear split_linear(const Term& t, const std::string& x) { return {t.coeff(x), t.without(x)}; }

namespace {

Formula negated(const Formula& f) { return to_nnf(make_not(f)); }

/// Rebuild a quantifier-free formula with every atom replaced by fn(atom).
Formula map_atoms(const Formula& f, const std::function<Formula(const Atom&)>& fn) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False: return f;
        case Kind::Atom: return fn(f.atom());
        case Kind::Not: return negated(map_atoms(f.child(), fn));
        case Kind::And:
        case Kind::Or: {
            std::vector<Formula> kids;
            for (const auto& c : f.children()) kids.push_back(map_atoms(c, fn));
            return f.kind() == Kind::And ? make_and(std::move(kids)) : make_or(std::move(kids));
        }
        case Kind::Exists:
        case Kind::Forall: {
            Formula body = map_atoms(f.child(), fn);
            return f.kind() == Kind::Exists ? make_exists(f.var(), body) : make_forall(f.var(), body);
        }
    }
    return f;
}

void for_each_atom(const Formula& f, const std::function<void(const Atom&)>& fn) {
    if (f.kind() == Kind::Atom) {
        fn(f.atom());
        return;
    }
    for (const auto& c : f.children()) for_each_atom(c, fn);
}

bool is_two_sided(const Atom& a, const std::string& x) {
    return a.kind == AtomKind::ValLe && a.lhs.mentions(x) && a.rhs.mentions(x);
}

/// x - a  for a unit-coefficient term t = ±x + w
Term center_of(const Term& t, const std::string& x) {
    Linear l = split_linear(t, x);
    if (l.coeff == 1) return -l.rest;
    if (l.coeff == -1) return l.rest;
    throw DomainError("expected a unit coefficient of '" + x + "' in " + t.to_string());
}

}  // namespace

std::optional<Formula> discharge_equality(const std::vector<Formula>& lits, const std::string& x) {
    const Atom* best = nullptr;
    for (const auto& l : lits) {
        if (!l.is_atom() || l.atom().kind != AtomKind::Eq || !l.atom().mentions(x)) continue;
        if (!best || abs(l.atom().lhs.coeff(x)) < abs(best->lhs.coeff(x))) best = &l.atom();
    }
    if (!best) return std::nullopt;
    Linear eq = split_linear(best->lhs, x);
    const Int n = eq.coeff;
    const Term s = eq.rest;
    // n·t = a·(n·x) + n·u = n·u - a·s
    auto scaled = [&](const Term& t) {
        Linear l = split_linear(t, x);
        return n * l.rest - l.coeff * s;
    };
    auto fn = [&](const Atom& a) -> Formula {
        if (!a.mentions(x)) return make_atom(a);
        switch (a.kind) {
            case AtomKind::Eq: return make_eq(scaled(a.lhs));
            case AtomKind::Div: return make_div(abs(n) * a.modulus, scaled(a.lhs));
            case AtomKind::ValLe: {
                auto side = [&](const Term& t) { return t.mentions(x) ? scaled(t) : n * t; };
                return make_val_le(a.prime, a.offset, side(a.lhs), side(a.rhs));
            }
        }
        return make_atom(a);
    };
    std::vector<Formula> out{make_div(abs(n), s)};
    for (const auto& l : lits) out.push_back(map_atoms(l, fn));
    return make_and(std::move(out));
}

Unified unify_coefficient(const std::vector<Formula>& lits, const std::string& x) {
    Int l = 1;
    for (const auto& f : lits)
        for_each_atom(f, [&](const Atom& a) {
            if (a.lhs.mentions(x)) l = lcm(l, abs(a.lhs.coeff(x)));
            if (a.rhs.mentions(x)) l = lcm(l, abs(a.rhs.coeff(x)));
        });
    if (l == 1) return {1, lits};
    auto factor = [&](const Term& t) { return t.mentions(x) ? Int(l / t.coeff(x)) : Int(1); };
    auto lift = [&](const Term& t) {
        if (!t.mentions(x)) return t;
        return factor(t) * t.without(x) + Term::variable(x);
    };
    auto fn = [&](const Atom& a) -> Formula {
        if (!a.mentions(x)) return make_atom(a);
        switch (a.kind) {
            case AtomKind::Eq: return make_eq(lift(a.lhs));
            case AtomKind::Div: return make_div(a.modulus * abs(factor(a.lhs)), lift(a.lhs));
            case AtomKind::ValLe: {
                std::int64_t k = a.offset - valuation_nz(a.prime, factor(a.lhs)) +
                                 valuation_nz(a.prime, factor(a.rhs));
                return make_val_le(a.prime, k, lift(a.lhs), lift(a.rhs));
            }
        }
        return make_atom(a);
    };
    Unified u;
    u.factor = l;
    for (const auto& f : lits) u.lits.push_back(map_atoms(f, fn));
    u.lits.push_back(make_div(l, Term::variable(x)));
    return u;
}

Formula one_sided_valuations(const Atom& a, const std::string& x) {
    if (!is_two_sided(a, x)) return make_atom(a);
    Int a1 = a.lhs.coeff(x), a2 = a.rhs.coeff(x);
    Int l = lcm(abs(a1), abs(a2));
    Int f1 = l / a1, f2 = l / a2;
    Term t1 = f1 * a.lhs, t2 = f2 * a.rhs;
    std::int64_t k = a.offset - valuation_nz(a.prime, f1) + valuation_nz(a.prime, f2);
    Term d = t1 - t2;
    // v(u + d) + k <= v(u) with u = t2
    if (k >= 1) return make_val_le(a.prime, k, d, t2);
    return make_or({make_val_le(a.prime, 1, t2, d), make_val_le(a.prime, 1, d, t2),
                    make_val_le(a.prime, k, t1, d)});
}

Formula make_one_sided(const Formula& f, const std::string& x) {
    return map_atoms(f, [&](const Atom& a) { return one_sided_valuations(a, x); });
}

Formula merge_congruences(const std::vector<Formula>& lits, const std::string& x, std::size_t residue_cap) {
    Int n = 1;
    for (const auto& l : lits) {
        const Formula& at = l.kind() == Kind::Not ? l.child() : l;
        if (!at.is_atom() || at.atom().kind != AtomKind::Div)
            throw DomainError("merge_congruences expects D literals, got " + render(l));
        n = lcm(n, at.atom().modulus);
    }
    if (n > Int(residue_cap))
        throw ResourceError("congruence merge needs " + n.str() + " residues (cap " + std::to_string(residue_cap) +
                            ")");
    std::vector<Formula> cases;
    for (Int s = 0; s < n; ++s) {
        std::vector<Formula> guard;
        for (const auto& l : lits) guard.push_back(substitute(l, x, Term::constant(s)));
        guard.push_back(make_div(n, Term::variable(x) - Term::constant(s)));
        cases.push_back(make_and(std::move(guard)));
    }
    return make_or(std::move(cases));
}

Formula split_prime_part(const Atom& div, const std::string& x, const Int& p) {
    if (div.kind != AtomKind::Div) throw DomainError("split_prime_part expects a D atom");
    std::int64_t k = valuation_nz(p, div.modulus);
    if (k == 0) return make_atom(div);
    Int pk = ipow(p, k);
    Int rest = div.modulus / pk;
    Term t1 = div.lhs, t2 = div.lhs;
    Linear l = split_linear(div.lhs, x);
    if (l.coeff == 1 && l.rest.is_ground()) {
        Int r = -l.rest.constant_part();
        t1 = Term::variable(x) - Term::constant(mod(r, rest));
        t2 = Term::variable(x) - Term::constant(mod(r, pk));
    }
    return make_and(make_div(rest, t1), make_val_le(p, k, Term::constant(1), t2));
}

Formula NormalForm1V::to_formula(const std::string& y) const {
    Term yv = Term::variable(y);
    std::vector<Formula> parts;
    for (const auto& a : disequalities) parts.push_back(make_ne(yv - a));
    for (const auto& [q, b] : primes) {
        for (const auto& l : b.lower) parts.push_back(valuation_at_least(q, yv - l.center, l.radius));
        for (const auto& h : b.holes) parts.push_back(negated(valuation_at_least(q, yv - h.center, h.radius)));
    }
    return make_and(std::move(parts));
}

namespace {

struct State {
    std::vector<Formula> lits;
    std::vector<Formula> guard;
    std::set<Term> nonzero;
    Int factor = 1;
};

void normalize_rec(State st, const std::string& x, std::vector<GuardedForm>& out) {
    // Flatten; branch on the first disjunction.
    std::vector<Formula> flat;
    std::vector<Formula> queue = st.lits;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        Formula f = queue[i];
        if (!f.is_literal() && f.kind() != Kind::And && f.kind() != Kind::Or && !f.is_true() && !f.is_false())
            throw DomainError("normalize expects a quantifier-free formula");
        if (f.kind() == Kind::Not && f.child().is_atom() && f.child().atom().kind == AtomKind::ValLe)
            f = to_nnf(f);
        if (f.is_false()) return;
        if (f.is_true()) continue;
        if (f.kind() == Kind::And) {
            queue.insert(queue.end(), f.children().begin(), f.children().end());
            continue;
        }
        if (f.kind() == Kind::Or) {
            for (const auto& c : f.children()) {
                State s2 = st;
                s2.lits = flat;
                s2.lits.insert(s2.lits.end(), queue.begin() + static_cast<std::ptrdiff_t>(i) + 1, queue.end());
                s2.lits.push_back(c);
                normalize_rec(std::move(s2), x, out);
            }
            return;
        }
        flat.push_back(f);
    }

    std::vector<Formula> inside;
    for (auto& f : flat) {
        if (mentions(f, x)) {
            inside.push_back(f);
            continue;
        }
        if (f.kind() == Kind::Not && f.child().atom().kind == AtomKind::Eq) st.nonzero.insert(f.child().atom().lhs);
        st.guard.push_back(f);
    }
    Formula guard = make_and(st.guard);
    if (guard.is_false()) return;
    if (inside.empty()) {
        out.push_back({guard, std::nullopt, make_true(), st.factor, std::nullopt});
        return;
    }

    for (const auto& f : inside)
        if (f.is_atom() && f.atom().kind == AtomKind::Eq) {
            out.push_back({guard, std::nullopt, *discharge_equality(inside, x), st.factor, f.atom().lhs});
            return;
        }

    Unified u = unify_coefficient(inside, x);
    if (u.factor != 1) {
        st.lits = std::move(u.lits);
        st.factor *= u.factor;
        normalize_rec(std::move(st), x, out);
        return;
    }

    for (std::size_t i = 0; i < inside.size(); ++i) {
        const Formula& f = inside[i];
        Formula repl;
        if (f.is_atom() && is_two_sided(f.atom(), x)) {
            repl = one_sided_valuations(f.atom(), x);
        } else if (f.kind() == Kind::Not && f.child().atom().kind == AtomKind::Div) {
            const Atom& d = f.child().atom();
            auto fac = factorize(d.modulus);
            if (fac.size() < 2) continue;
            std::vector<Formula> alts;
            for (const auto& [q, e] : fac) alts.push_back(make_not(make_div(ipow(q, e), d.lhs)));
            repl = make_or(std::move(alts));
        } else {
            continue;
        }
        st.lits = inside;
        st.lits[i] = repl;
        normalize_rec(std::move(st), x, out);
        return;
    }

    // Zero split on symbolic radius terms.
    for (const auto& f : inside) {
        if (!f.is_atom() || f.atom().kind != AtomKind::ValLe) continue;
        const Atom& a = f.atom();
        const Term& c = a.lhs.mentions(x) ? a.rhs : a.lhs;
        if (c.is_ground() || st.nonzero.count(c)) continue;
        State zero = st;
        zero.lits.clear();
        for (const auto& g : inside) {
            if (g.is_atom() && g.atom().kind == AtomKind::ValLe) {
                const Atom& b = g.atom();
                if (b.lhs.mentions(x) && b.rhs == c) continue;  // v(..) <= v(0): true
                if (b.rhs.mentions(x) && b.lhs == c) {
                    zero.lits.push_back(make_eq(b.rhs));  // v(..) >= v(0)
                    continue;
                }
            }
            zero.lits.push_back(g);
        }
        zero.guard.push_back(make_eq(c));
        normalize_rec(std::move(zero), x, out);

        st.lits = inside;
        st.guard.push_back(make_ne(c));
        st.nonzero.insert(c);
        normalize_rec(std::move(st), x, out);
        return;
    }

    NormalForm1V nf;
    nf.factor = st.factor;
    for (const auto& f : inside) {
        if (f.kind() == Kind::Not) {
            const Atom& a = f.child().atom();
            if (a.kind == AtomKind::Eq) {
                nf.disequalities.push_back(center_of(a.lhs, x));
            } else {
                auto fac = factorize(a.modulus);
                nf.primes[fac[0].first].holes.push_back({center_of(a.lhs, x), ValExpr::constant(fac[0].second)});
            }
            continue;
        }
        const Atom& a = f.atom();
        if (a.kind == AtomKind::Div) {
            Term c = center_of(a.lhs, x);
            for (const auto& [q, e] : factorize(a.modulus)) nf.primes[q].lower.push_back({c, ValExpr::constant(e)});
        } else if (a.lhs.mentions(x)) {
            ValExpr r = a.rhs.is_one() ? ValExpr::constant(1 - a.offset) : ValExpr::of_term(a.rhs, 1 - a.offset);
            nf.primes[a.prime].holes.push_back({center_of(a.lhs, x), r});
        } else {
            ValExpr r = a.lhs.is_one() ? ValExpr::constant(a.offset) : ValExpr::of_term(a.lhs, a.offset);
            nf.primes[a.prime].lower.push_back({center_of(a.rhs, x), r});
        }
    }
    out.push_back({guard, std::move(nf), make_true(), st.factor, std::nullopt});
}

}  // namespace

std::vector<GuardedForm> normalize_conjunct(const std::vector<Formula>& lits, const std::string& x) {
    std::vector<GuardedForm> out;
    State st;
    st.lits = lits;
    normalize_rec(std::move(st), x, out);
    return out;
}

std::optional<ReducedBounds> reduce_prime_bounds(const Int& p, const PrimeBounds& b) {
    auto ground = [](const Bound& x) {
        if (!x.center.is_ground() || !x.radius.is_constant())
            throw DomainError("reduce_bounds needs ground centres and constant radii");
    };
    Ball b0(p, 0, 0);
    for (const auto& l : b.lower) {
        ground(l);
        if (l.radius.offset > b0.radius().value()) b0 = Ball(p, l.center.constant_part(), l.radius.offset);
    }
    for (const auto& l : b.lower) {
        if (l.radius.offset <= 0) continue;
        if (!ball_within(b0, Ball(p, l.center.constant_part(), l.radius.offset))) return std::nullopt;
    }
    std::vector<Ball> holes;
    for (const auto& h : b.holes) {
        ground(h);
        if (h.radius.offset <= 0) return std::nullopt;
        Ball hb(p, h.center.constant_part(), h.radius.offset);
        if (ball_within(b0, hb)) return std::nullopt;
        if (ball_within(hb, b0)) holes.push_back(hb);
    }
    std::vector<Ball> antichain;
    for (std::size_t i = 0; i < holes.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < holes.size() && !dominated; ++j) {
            if (i == j) continue;
            auto r = ball_compare(holes[i], holes[j]);
            dominated = r == BallRelation::FirstInsideSecond || (r == BallRelation::Equal && j < i);
        }
        if (!dominated) antichain.push_back(holes[i]);
    }
    if (is_covered(b0, antichain)) return std::nullopt;
    return ReducedBounds{b0, antichain};
}

Formula reduce_bounds(const std::vector<Formula>& lits, const std::string& x) {
    // Primes that only occur through congruences are rendered back as D atoms.
    std::set<Int> val_primes;
    for (const auto& f : lits)
        for_each_atom(f, [&](const Atom& a) {
            if (a.kind == AtomKind::ValLe) val_primes.insert(a.prime);
        });
    std::vector<Formula> cases;
    for (const auto& g : normalize_conjunct(lits, x)) {
        if (!g.form) {
            cases.push_back(make_and(g.guard, g.resolved));
            continue;
        }
        const NormalForm1V& nf = *g.form;
        Term y = Term::variable(x, nf.factor);
        std::vector<Formula> parts{g.guard};
        bool empty = false;
        for (const auto& [q, b] : nf.primes) {
            auto r = reduce_prime_bounds(q, b);
            if (!r) {
                empty = true;
                break;
            }
            const Ball& b0 = r->lower;
            std::int64_t g0 = b0.radius().value();
            Term one = Term::constant(1);
            if (!val_primes.count(q)) {
                parts.push_back(make_div(ipow(q, g0), y - Term::constant(b0.center())));
                for (const auto& h : r->holes)
                    parts.push_back(make_not(make_div(ipow(q, h.radius().value()), y - Term::constant(h.center()))));
                continue;
            }
            if (g0 > 0) parts.push_back(make_val_le(q, g0, one, y - Term::constant(b0.center())));
            for (const auto& h : r->holes)
                parts.push_back(make_val_le(q, 1 - h.radius().value(), y - Term::constant(h.center()), one));
        }
        if (empty) continue;
        for (const auto& a : nf.disequalities) parts.push_back(make_ne(y - a));
        cases.push_back(make_and(std::move(parts)));
    }
    return make_or(std::move(cases));
}

}  // namespace padiq
