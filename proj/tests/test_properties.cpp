#include "padiq/ball.hpp"
#include "padiq/error.hpp"
#include "padiq/normalize.hpp"
#include "padiq/oracle.hpp"
#include "padiq/qe.hpp"
#include "padiq/syntax.hpp"

#include "printers.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace padiq;

namespace {

const PrimeSet P23{{2, 3}};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    long pick(long lo, long hi) { return lo + static_cast<long>(g_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool coin() { return pick(0, 1) == 1; }

private:
    std::mt19937_64 g_;
};

std::string plus(long k) { return k < 0 ? " - " + std::to_string(-k) : " + " + std::to_string(k); }

std::string lin(Rng& r, const char* param) {
    long c = r.pick(1, 3);
    return (r.coin() ? "" : "-") + std::to_string(c) + "*x - " + param + plus(r.pick(-4, 4));
}

/// Random conjunction of literals in x with parameters a and b.
std::vector<Formula> random_conjunct(Rng& r) {
    std::vector<std::string> lits;
    int n = static_cast<int>(r.pick(1, 4));
    for (int i = 0; i < n; ++i) {
        std::string p = r.coin() ? "2" : "3";
        const char* par = r.coin() ? "a" : "b";
        switch (r.pick(0, 7)) {
            case 0: lits.push_back("v" + p + "(" + lin(r, par) + ") >= " + std::to_string(r.pick(0, 3))); break;
            case 1: lits.push_back("!(v" + p + "(" + lin(r, par) + ") >= " + std::to_string(r.pick(1, 3)) + ")"); break;
            case 2:
                lits.push_back("v" + p + "(" + lin(r, par) + ") >= v" + p + "(b)" + plus(r.pick(-1, 1)));
                break;
            case 3: lits.push_back("v" + p + "(x - a) <= v" + p + "(x - b)"); break;
            case 4: lits.push_back("D" + std::to_string(r.pick(2, 12)) + "(" + lin(r, par) + ")"); break;
            case 5: lits.push_back("!D" + std::to_string(r.pick(2, 6)) + "(" + lin(r, par) + ")"); break;
            case 6: lits.push_back("x != " + std::string(par) + plus(r.pick(-3, 3))); break;
            default: lits.push_back(std::to_string(r.pick(1, 3)) + "*x = a" + plus(r.pick(-3, 3))); break;
        }
    }
    std::string text;
    for (const auto& l : lits) text += (text.empty() ? "" : " && ") + l;
    Formula f = to_nnf(parse(text, P23));
    if (f.kind() == Kind::And) return f.children();
    return {f};
}

/// Truth of the guarded cases of normalize_conjunct at x.
bool cases_hold(const std::vector<GuardedForm>& cases, const std::string& x, const Assignment& at) {
    for (const auto& g : cases) {
        if (!eval_qf(g.guard, at)) continue;
        Assignment y = at;
        if (g.form) {
            y[x] = g.form->factor * at.at(x);
            if (eval_qf(g.form->to_formula(x), y)) return true;
        } else if (g.equation) {
            y[x] = g.factor * at.at(x);
            if (g.equation->eval(y) == 0 && eval_qf(g.resolved, at)) return true;
        } else if (eval_qf(g.resolved, at)) {
            // x is unconstrained in this case
            return true;
        }
    }
    return false;
}

const int kWindow = 48;

void atoms_of(const Formula& f, std::vector<Atom>& out) {
    if (f.is_atom()) {
        out.push_back(f.atom());
        return;
    }
    if (f.kind() == Kind::Not || f.kind() == Kind::Exists || f.kind() == Kind::Forall) {
        atoms_of(f.child(), out);
        return;
    }
    if (f.kind() == Kind::And || f.kind() == Kind::Or)
        for (const auto& c : f.children()) atoms_of(c, out);
}

}  // namespace

TEST(Properties, PassesPreserveMeaning) {
    Rng r(11);
    for (int trial = 0; trial < 60; ++trial) {
        auto lits = random_conjunct(r);
        Formula input = make_and(lits);
        auto cases = normalize_conjunct(lits, "x");
        Unified u = unify_coefficient(lits, "x");
        Formula unified = make_and(u.lits);
        Formula sided = make_one_sided(input, "x");
        for (int s = 0; s < 200; ++s) {
            Assignment at{{"a", r.pick(-12, 12)}, {"b", r.pick(-12, 12)}};
            for (int x = -kWindow; x <= kWindow; ++x) {
                at["x"] = x;
                bool want = eval_qf(input, at);
                ASSERT_EQ(eval_qf(sided, at), want) << render(input) << " one-sided at x=" << x;
                ASSERT_EQ(cases_hold(cases, "x", at), want) << render(input) << " normal form at a=" << at["a"] << " b=" << at["b"] << " x=" << x;
                Assignment y = at;
                y["x"] = u.factor * x;
                ASSERT_EQ(eval_qf(unified, y), want) << render(input) << " unified at x=" << x;
            }
        }
    }
}

TEST(Properties, GuardsCoverParameterSpace) {
    // Without x-free literals some guard holds at every parameter value, and
    // guards coming from one zero split never hold together.
    Rng r(12);
    for (int trial = 0; trial < 80; ++trial) {
        auto lits = random_conjunct(r);
        bool all_mention = true;
        for (const auto& l : lits) all_mention = all_mention && mentions(l, "x");
        if (!all_mention) continue;
        auto cases = normalize_conjunct(lits, "x");
        for (int a = -10; a <= 10; ++a)
            for (int b = -10; b <= 10; ++b) {
                Assignment at{{"a", a}, {"b", b}};
                bool any = false;
                for (const auto& g : cases) any = any || eval_qf(g.guard, at);
                ASSERT_TRUE(any) << render(make_and(lits)) << " at a=" << a << " b=" << b;
            }
    }
    Formula f = parse("v2(x - a) >= v2(b) + 1 && !(v2(x) >= v2(b))", P23);
    auto cases = normalize_conjunct(f.children(), "x");
    for (int b = -8; b <= 8; ++b) {
        int holding = 0;
        for (const auto& g : cases) holding += eval_qf(g.guard, {{"a", 1}, {"b", b}});
        EXPECT_EQ(holding, 1) << "b=" << b;
    }
}

TEST(Properties, MergedCongruenceShape) {
    Rng r(13);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Formula> lits;
        Int n = 1;
        int k = static_cast<int>(r.pick(1, 3));
        for (int i = 0; i < k; ++i) {
            long m = r.pick(2, 10), c = r.pick(1, 3);
            // D_m(c·x + k) constrains x modulo m / gcd(m, c)
            n = lcm(n, Int(m) / gcd(Int(m), Int(c)));
            Formula d = make_div(m, Term::variable("x", c) + Term::constant(r.pick(-20, 20)));
            lits.push_back(r.coin() ? d : to_nnf(make_not(d)));
        }
        bool constant = false;
        for (const auto& l : lits) constant = constant || l.is_true() || l.is_false();
        if (constant) continue;
        Formula merged = merge_congruences(lits, "x");
        std::vector<Atom> atoms;
        atoms_of(merged, atoms);
        for (const auto& a : atoms) {
            if (a.kind != AtomKind::Div) continue;
            EXPECT_EQ(a.modulus, n) << render(merged);
            Int r0 = -a.lhs.constant_part();
            EXPECT_TRUE(r0 >= 0 && r0 < n) << render(merged);
        }
        for (int x = -60; x <= 60; ++x)
            ASSERT_EQ(eval_qf(merged, {{"x", x}}), eval_qf(make_and(lits), {{"x", x}})) << render(merged);
    }
}

TEST(Properties, ReducedBoundsShape) {
    Rng r(14);
    for (int trial = 0; trial < 400; ++trial) {
        long p = r.coin() ? 2 : 3;
        PrimeBounds b;
        int lows = static_cast<int>(r.pick(1, 3)), ups = static_cast<int>(r.pick(0, 4));
        for (int i = 0; i < lows; ++i) b.lower.push_back({Term::constant(r.pick(-30, 30)), ValExpr::constant(r.pick(0, 3))});
        for (int i = 0; i < ups; ++i) b.holes.push_back({Term::constant(r.pick(-30, 30)), ValExpr::constant(r.pick(1, 5))});
        auto red = reduce_prime_bounds(p, b);
        auto holds = [&](long y) {
            for (const auto& l : b.lower)
                if (!Ball(p, l.center.constant_part(), l.radius.offset).contains(y)) return false;
            for (const auto& h : b.holes)
                if (Ball(p, h.center.constant_part(), h.radius.offset).contains(y)) return false;
            return true;
        };
        long period = static_cast<long>(ipow(p, 5).convert_to<long>());
        if (!red) {
            for (long y = 0; y < period; ++y) ASSERT_FALSE(holds(y));
            continue;
        }
        for (std::size_t i = 0; i < red->holes.size(); ++i) {
            EXPECT_EQ(ball_compare(red->holes[i], red->lower), BallRelation::FirstInsideSecond);
            for (std::size_t j = i + 1; j < red->holes.size(); ++j)
                EXPECT_EQ(ball_compare(red->holes[i], red->holes[j]), BallRelation::Disjoint);
        }
        SwissCheese f(red->lower, red->holes);
        for (long y = 0; y < period; ++y) ASSERT_EQ(f.member(y), holds(y)) << y;
    }
}

TEST(Properties, EmptinessKernelMatchesResidualCount) {
    // Grounded single-prime bounds: the symbolic nonemptiness condition agrees
    // with residue enumeration.
    Rng r(15);
    for (int trial = 0; trial < 600; ++trial) {
        long p = r.coin() ? 2 : 3;
        long g0 = r.pick(0, 2);
        long a0 = r.pick(-20, 20);
        Ball outer(p, a0, g0);
        std::vector<Ball> holes;
        int n = static_cast<int>(r.pick(0, 4));
        for (int tries = 0; tries < 30 && static_cast<int>(holes.size()) < n; ++tries) {
            long k = r.pick(1, 6);
            Ball h(p, a0 + static_cast<long>(ipow(p, g0).convert_to<long>()) * r.pick(0, 40), g0 + k);
            bool ok = true;
            for (const auto& e : holes) ok = ok && ball_compare(h, e) == BallRelation::Disjoint;
            if (ok) holes.push_back(h);
        }
        PrimeBounds b;
        b.lower.push_back({Term::constant(a0), ValExpr::constant(g0)});
        for (const auto& h : holes) b.holes.push_back({Term::constant(h.center()), ValExpr::constant(h.radius().value())});
        bool nonempty = eval_ground(nonempty_condition(p, b));
        EXPECT_EQ(nonempty, residual_count(outer, holes) > 0) << outer.to_string();
        EXPECT_EQ(nonempty, !residual_balls(outer, holes).empty());
    }
}

TEST(Properties, DeepHoleNeverEmpties) {
    // A hole deeper than the number of holes leaves the cheese nonempty.
    for (long p : {2, 3})
        for (long n = 1; n <= 5; ++n) {
            Ball outer(p, 0, 0);
            std::vector<Ball> holes{Ball(p, 0, n)};
            for (long i = 1; i < n; ++i) holes.push_back(Ball(p, static_cast<long>(ipow(p, i - 1).convert_to<long>()), i));
            for (long i = 1; i < n; ++i) ASSERT_EQ(ball_compare(holes[0], holes[static_cast<std::size_t>(i)]), BallRelation::Disjoint);
            EXPECT_FALSE(is_covered(outer, holes)) << p << " " << n;
            EXPECT_TRUE(first_residual_ball(outer, holes).has_value());
        }
}

TEST(Properties, SplitAndUnionRoundTrip) {
    Rng r(16);
    for (int trial = 0; trial < 300; ++trial) {
        long p = r.coin() ? 2 : 3;
        long g = r.pick(0, 2);
        Ball outer(p, r.pick(0, 50), g);
        std::vector<Ball> holes;
        for (int tries = 0; tries < 6; ++tries) {
            Ball h(p, outer.center() + ipow(p, g) * r.pick(0, 30), g + r.pick(1, 3));
            bool ok = true;
            for (const auto& e : holes) ok = ok && ball_compare(h, e) == BallRelation::Disjoint;
            if (ok) holes.push_back(h);
        }
        if (is_covered(outer, holes)) continue;
        SwissCheese f(outer, holes);
        long k = r.pick(0, 2);
        auto parts = split_cheese(f, k);
        long period = static_cast<long>(ipow(p, g + 5).convert_to<long>());
        for (long y = 0; y < period; ++y) {
            int hits = 0;
            for (const auto& s : parts) hits += s.member(y);
            ASSERT_EQ(hits, f.member(y) ? 1 : 0) << f.to_string() << " y=" << y;
        }
        // gluing the pieces back together recovers the same set
        std::optional<SwissCheese> acc;
        for (const auto& s : parts) {
            if (!acc) {
                acc = s;
                continue;
            }
            auto u = union_cheeses(*acc, s);
            if (!u) {
                acc.reset();
                break;
            }
            acc = u;
        }
        if (acc && parts.size() > 1) {
            for (long y = 0; y < period; ++y) ASSERT_EQ(acc->member(y), f.member(y)) << f.to_string();
        }
        auto self = union_cheeses(f, f);
        ASSERT_TRUE(self);
        EXPECT_EQ(self->outer(), f.outer());
        EXPECT_EQ(self->holes().size(), f.holes().size()) << f.to_string();
        for (long y = 0; y < period; ++y) ASSERT_EQ(self->member(y), f.member(y)) << f.to_string();
    }
}

TEST(Properties, SolveCertificatesAndDisequalities) {
    Rng r(17);
    for (int trial = 0; trial < 300; ++trial) {
        auto lits = random_conjunct(r);
        Assignment params{{"a", r.pick(-10, 10)}, {"b", r.pick(-10, 10)}};
        Formula g = substitute_all(make_and(lits), params);
        SolveResult s = solve_grounded_1v(g, "x");
        SatResult brute = brute_force_sat_1v(g, "x");
        ASSERT_EQ(s.result.sat, brute.sat) << render(g);
        if (!s.result.sat) continue;
        ASSERT_TRUE(eval_qf(g, {{"x", s.result.witness}})) << render(g);
        // up to three extra disequalities keep a non-pinned solution set nonempty
        if (period_bound(g, "x").eq_atoms > 0) continue;
        Formula h = g;
        for (int i = 0; i < 3; ++i) h = make_and(h, make_not(make_eq(Term::variable("x") - Term::constant(r.pick(-20, 20)))));
        EXPECT_TRUE(solve_grounded_1v(h, "x").result.sat) << render(h);
    }
}

TEST(Properties, SplitPrimePartPointwise) {
    for (long m = 2; m <= 72; ++m)
        for (long r0 = -5; r0 <= 5; ++r0)
            for (long p : {2, 3}) {
                Formula d = make_div(m, Term::variable("x") - Term::constant(r0));
                Formula s = split_prime_part(d.atom(), "x", p);
                for (long x = -150; x <= 150; ++x)
                    ASSERT_EQ(eval_qf(s, {{"x", x}}), eval_qf(d, {{"x", x}})) << render(d) << " p=" << p;
            }
}
