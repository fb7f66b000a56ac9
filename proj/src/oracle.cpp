#include "padiq/oracle.hpp"

#include "padiq/error.hpp"

#include <algorithm>

namespace padiq {

bool eval_atom(const Atom& a, const Assignment& values) {
    switch (a.kind) {
        case AtomKind::Eq: return a.lhs.eval(values) == 0;
        case AtomKind::Div: return a.lhs.eval(values) % a.modulus == 0;
        case AtomKind::ValLe:
            return valuation(a.prime, a.lhs.eval(values)).plus(a.offset) <=
                   valuation(a.prime, a.rhs.eval(values));
    }
    return false;
}

bool eval_qf(const Formula& f, const Assignment& values) {
    switch (f.kind()) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Atom: return eval_atom(f.atom(), values);
        case Kind::Not: return !eval_qf(f.child(), values);
        case Kind::And:
            for (const auto& c : f.children())
                if (!eval_qf(c, values)) return false;
            return true;
        case Kind::Or:
            for (const auto& c : f.children())
                if (eval_qf(c, values)) return true;
            return false;
        case Kind::Exists:
        case Kind::Forall: throw DomainError("eval_qf on a quantified formula");
    }
    return false;
}

namespace {

template <class Fn>
void for_each_atom(const Formula& f, Fn&& fn) {
    if (f.kind() == Kind::Exists || f.kind() == Kind::Forall)
        throw DomainError("expected a quantifier-free formula");
    if (f.kind() == Kind::Atom) {
        fn(f.atom());
        return;
    }
    for (const auto& c : f.children()) for_each_atom(c, fn);
}

void check_grounded(const Term& t, const std::string& var) {
    if (!t.without(var).is_ground())
        throw DomainError("formula is not grounded: '" + t.to_string() + "' has parameters besides '" +
                          var + "'");
}

// v(L·x - c1) + k' <= v(L·x - c2) after scaling both sides to the common
// coefficient L; diff = c2 - c1.
struct TwoSided {
    Int lcm_coeff;
    Int c2;
    Int diff;
    std::int64_t offset;
};

TwoSided scale_two_sided(const Atom& a, const std::string& var) {
    Int a1 = a.lhs.coeff(var), a2 = a.rhs.coeff(var);
    Int l = lcm(abs(a1), abs(a2));
    Int f1 = l / a1, f2 = l / a2;
    Int w1 = a.lhs.without(var).constant_part(), w2 = a.rhs.without(var).constant_part();
    TwoSided s;
    s.lcm_coeff = l;
    s.c2 = -(f2 * w2);
    s.diff = f1 * w1 - f2 * w2;
    s.offset = a.offset - valuation_nz(a.prime, f1) + valuation_nz(a.prime, f2);
    return s;
}

}  // namespace

PeriodBound period_bound(const Formula& f, const std::string& var) {
    PeriodBound b;
    for_each_atom(canonicalize(f), [&](const Atom& a) {
        check_grounded(a.lhs, var);
        check_grounded(a.rhs, var);
        if (!a.mentions(var)) return;
        switch (a.kind) {
            case AtomKind::Eq: ++b.eq_atoms; return;
            case AtomKind::Div: b.period = lcm(b.period, a.modulus); return;
            case AtomKind::ValLe: {
                std::int64_t gamma = 0;
                if (a.lhs.mentions(var) && a.rhs.mentions(var)) {
                    auto s = scale_two_sided(a, var);
                    if (s.diff == 0) {
                        ++b.eq_atoms;
                        return;
                    }
                    // Every comparison involved is against v(d) + j with |j| <= |k|.
                    gamma = valuation_nz(a.prime, s.diff) + (s.offset < 0 ? -s.offset : s.offset) + 1;
                    b.period = lcm(b.period, ipow(a.prime, gamma));
                    return;
                }
                if (a.lhs.mentions(var)) {
                    // v(t1) <= v(c) - k, i.e. the complement of v(t1) >= v(c) - k + 1
                    gamma = valuation_nz(a.prime, a.rhs.constant_part()) - a.offset + 1;
                } else {
                    gamma = valuation_nz(a.prime, a.lhs.constant_part()) + a.offset;
                }
                if (gamma > 0) b.period = lcm(b.period, ipow(a.prime, gamma));
                return;
            }
        }
    });
    return b;
}

std::vector<Int> eq_roots(const Formula& f, const std::string& var) {
    std::vector<Int> roots;
    for_each_atom(canonicalize(f), [&](const Atom& a) {
        if (a.kind == AtomKind::ValLe && a.lhs.mentions(var) && a.rhs.mentions(var)) {
            auto s = scale_two_sided(a, var);
            if (s.diff == 0 && s.c2 % s.lcm_coeff == 0) roots.push_back(s.c2 / s.lcm_coeff);
            return;
        }
        if (a.kind != AtomKind::Eq || !a.mentions(var)) return;
        Int c = a.lhs.coeff(var);
        Int u = a.lhs.without(var).constant_part();
        if (u % c == 0) roots.push_back(-u / c);
    });
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

namespace {

bool closer(const Int& a, const Int& b) {
    Int aa = abs(a), ab = abs(b);
    if (aa != ab) return aa < ab;
    return a > b;
}

}  // namespace

std::vector<Int> search_points(const PeriodBound& b, std::vector<Int> roots) {
    Int w = Int(b.eq_atoms + 1) * b.period;
    std::vector<Int> pts;
    pts.push_back(0);
    for (Int i = 1; i <= w; ++i) {
        pts.push_back(i);
        pts.push_back(-i);
    }
    for (auto& r : roots)
        if (abs(r) > w) pts.push_back(r);
    std::stable_sort(pts.begin(), pts.end(), closer);
    return pts;
}

SatResult brute_force_sat_1v(const Formula& f, const std::string& var) {
    Formula g = canonicalize(f);
    PeriodBound b = period_bound(g, var);
    std::optional<Int> best;
    for (const Int& r : eq_roots(g, var))
        if (eval_qf(g, {{var, r}}) && (!best || closer(r, *best))) best = r;
    Int w = Int(b.eq_atoms + 1) * b.period;
    Assignment at{{var, Int(0)}};
    for (Int i = 0; i <= w; ++i) {
        if (best && abs(*best) < i) break;
        for (int s : {1, -1}) {
            if (i == 0 && s < 0) continue;
            Int x = s * i;
            if (best && !closer(x, *best)) continue;
            at[var] = x;
            if (eval_qf(g, at)) best = x;
        }
    }
    return best ? SatResult::with(*best) : SatResult::unsat();
}

}  // namespace padiq
