#include "padiq/error.hpp"
#include "padiq/formula.hpp"
#include "padiq/oracle.hpp"
#include "padiq/syntax.hpp"

#include "printers.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace padiq;

namespace {

const PrimeSet P2{{2}};
const PrimeSet P23{{2, 3}};

Term x() { return Term::variable("x"); }
Term y() { return Term::variable("y"); }
Term c(long v) { return Term::constant(v); }

}  // namespace

TEST(Parse, DivAtom) {
    EXPECT_EQ(parse("D3(x)", P2), make_div(3, x()));
    EXPECT_EQ(render(parse("D3(x)", P2)), "D3(x)");
}

TEST(Parse, ValuationComparison) {
    Formula f = parse("v2(x) <= v2(y)", P2);
    ASSERT_TRUE(f.is_atom());
    EXPECT_EQ(f.atom(), Atom::val_le(2, 0, x(), y()));
    EXPECT_EQ(render(f), "v2(x) <= v2(y)");
}

TEST(Parse, LowerBoundSugar) {
    Formula f = parse("E x. v2(x - y) >= 2", P2);
    ASSERT_EQ(f.kind(), Kind::Exists);
    ASSERT_TRUE(f.child().is_atom());
    const Atom& a = f.child().atom();
    EXPECT_EQ(a.kind, AtomKind::ValLe);
    EXPECT_EQ(a.offset, 2);
    EXPECT_TRUE(a.lhs.is_one());
    EXPECT_EQ(a.rhs, x() - y());
}

TEST(Parse, Errors) {
    EXPECT_THROW(parse("v5(x) >= 1", P23), ParseError);
    EXPECT_THROW(parse("D0(x)", P2), ParseError);
    EXPECT_THROW(parse("x = ", P2), ParseError);
    try {
        parse("x = 1 &&\n  y ==", P2);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(Parse, AlphaRenaming) {
    Formula f = parse("D2(x) && E x. D3(x)", P2);
    EXPECT_EQ(free_vars(f), std::set<std::string>{"x"});
    ASSERT_EQ(f.kind(), Kind::And);
    for (const auto& k : f.children())
        if (k.kind() == Kind::Exists) EXPECT_NE(k.var(), "x");
}

TEST(Render, RoundTrip) {
    const char* samples[] = {
        "D3(x)",
        "v2(x) <= v2(y)",
        "E x. v2(x - y) >= 2",
        "A x. D2(x) -> D2(x + 2)",
        "!(v2(x) <= v2(y))",
        "x = 2*y + 4 || !D6(3*x - y) && v3(x) < v3(y) + 2",
        "E x. E y. v2(x - y) = 3 && D5(x + y)",
        "v3(2*x + 1) <= 4 && v3(y) > 2",
    };
    for (const char* s : samples) {
        Formula f = parse(s, P23);
        std::string r = render(f);
        EXPECT_EQ(parse(r, P23), f) << s << " -> " << r;
        EXPECT_EQ(render(parse(r, P23)), r);
    }
}

TEST(Substitute, Examples) {
    EXPECT_EQ(substitute(parse("v2(x) >= 1", P2), "x", 3 * x()), parse("v2(3*x) >= 1", P2));
    EXPECT_EQ(substitute(parse("D3(x - 1)", P2), "x", y() + c(4)), parse("D3(y + 3)", P2));
    EXPECT_TRUE(substitute(parse("x = 0", P2), "x", c(6)).is_false());
    EXPECT_THROW(substitute(parse("E y. x = y", P2), "x", y()), DomainError);
}

TEST(Nnf, Examples) {
    Formula f = to_nnf(parse("!(D2(x) && D3(x))", P23));
    EXPECT_EQ(f, parse("!D2(x) || !D3(x)", P23));
    Formula g = to_nnf(parse("!(v2(x) <= v2(y))", P2));
    EXPECT_EQ(g, make_and(make_val_le(2, 1, y(), x()), make_ne(y())));
    Formula h = to_nnf(parse("!(E x. D2(x))", P2));
    EXPECT_EQ(h.kind(), Kind::Forall);
}

TEST(Nnf, SoundOnSamples) {
    const char* samples[] = {
        "!(v2(x) <= v2(y))",
        "!(v2(x - 1) >= 2 || D3(x + y))",
        "!(v3(x) <= v3(y) + 2 && x != y)",
        "!(v2(x) = v2(y))",
        "!(v2(2*x) > 3 -> v3(y) < 1)",
    };
    for (const char* s : samples) {
        Formula f = parse(s, P23);
        Formula n = to_nnf(f);
        for (int a = -12; a <= 12; ++a)
            for (int b = -12; b <= 12; ++b) {
                Assignment at{{"x", Int(a)}, {"y", Int(b)}};
                ASSERT_EQ(eval_qf(f, at), eval_qf(n, at)) << s << " at " << a << "," << b;
            }
    }
}

TEST(Nnf, NegationLawPointwise) {
    for (int p : {2, 3})
        for (int k = -3; k <= 3; ++k)
            for (int a = -30; a <= 30; ++a)
                for (int b = -30; b <= 30; b += 3) {
                    Atom at = Atom::val_le(p, k, c(a), c(b));
                    bool pos = eval_atom(at, {});
                    bool neg = eval_qf(negate_literal(Formula::raw_atom(at)), {});
                    ASSERT_NE(pos, neg) << p << " " << k << " " << a << " " << b;
                }
}

TEST(Dnf, Cap) {
    Formula f = parse("(D2(x) || D3(x)) && (D5(x) || D7(x)) && (x = 1 || x = 2)", P23);
    auto d = to_dnf(to_nnf(f), 1000);
    EXPECT_EQ(d.size(), 8u);
    EXPECT_THROW(to_dnf(to_nnf(f), 5), ResourceError);
}

TEST(Valuation, Examples) {
    EXPECT_EQ(valuation(2, 12), ValN::fin(2));
    EXPECT_EQ(valuation(2, 0), ValN::infinity());
    EXPECT_EQ(valuation(3, -9), ValN::fin(2));
}

TEST(Oracle, EvalExamples) {
    Formula f = parse("v2(x - 1) >= 2", P2);
    EXPECT_TRUE(eval_qf(f, {{"x", 5}}));
    EXPECT_FALSE(eval_qf(f, {{"x", 3}}));
    EXPECT_FALSE(eval_qf(parse("D8(x) && !(v2(x) >= 3)", P2), {{"x", 8}}));
    EXPECT_THROW(eval_qf(f, {}), DomainError);
}

TEST(Oracle, PeriodBound) {
    auto b = period_bound(parse("D3(x) && v2(x - 1) >= 2", P2), "x");
    EXPECT_EQ(b.period, 12);
    EXPECT_EQ(b.eq_atoms, 0u);
    b = period_bound(parse("v2(x) >= 3", P2), "x");
    EXPECT_EQ(b.period, 8);
    b = period_bound(parse("D3(x) && x != 5", P2), "x");
    EXPECT_EQ(b.period, 3);
    EXPECT_EQ(b.eq_atoms, 1u);
    EXPECT_THROW(period_bound(parse("v2(x) <= v2(x - y)", P2), "x"), DomainError);
    b = period_bound(parse("v2(x) <= v2(x - 4)", P2), "x");
    EXPECT_EQ(b.period, 8);
    b = period_bound(parse("v2(2*x) >= v2(x) + 2", P2), "x");
    EXPECT_EQ(b.eq_atoms, 1u);
}

TEST(Oracle, PeriodicityHolds) {
    const char* samples[] = {"D3(x) && v2(x - 1) >= 2", "v2(x) >= 3", "v3(2*x - 5) <= 1 && !D4(x + 1)",
                             "v2(x - 12) < 3 || v3(x + 2) >= 2", "v2(x) <= v2(x - 4)", "v3(2*x - 1) > v3(x + 4) - 1",
                             "v2(x - 6) >= v2(3*x + 2) + 2 || v2(x + 1) < v2(x - 7)"};
    for (const char* s : samples) {
        Formula f = parse(s, P23);
        Int m = period_bound(f, "x").period;
        for (Int v = -3 * m; v < 3 * m; ++v)
            ASSERT_EQ(eval_qf(f, {{"x", v}}), eval_qf(f, {{"x", v + m}})) << s;
    }
}

TEST(Oracle, BruteForce) {
    // least |x|: v2(-3 - 1) = 2
    EXPECT_EQ(brute_force_sat_1v(parse("v2(x - 1) >= 2 && x != 1", P2), "x"), SatResult::with(-3));
    EXPECT_EQ(brute_force_sat_1v(parse("v2(x - 1) >= 2 && x != 1 && x != -3", P2), "x"), SatResult::with(5));
    EXPECT_EQ(brute_force_sat_1v(parse("v2(x) >= 1 && !D2(x)", P2), "x"), SatResult::unsat());
    EXPECT_EQ(brute_force_sat_1v(parse("x = 4 && D8(x)", P2), "x"), SatResult::unsat());
    EXPECT_EQ(brute_force_sat_1v(parse("x = 40 && D8(x)", P2), "x"), SatResult::with(40));
    EXPECT_EQ(brute_force_sat_1v(parse("D3(x + 1)", P2), "x"), SatResult::with(-1));
    EXPECT_EQ(brute_force_sat_1v(parse("D2(x + 1)", P2), "x"), SatResult::with(1));
    EXPECT_EQ(brute_force_sat_1v(parse("v2(2*x) >= v2(x) + 2 && x != 0", P2), "x"), SatResult::unsat());
    EXPECT_EQ(brute_force_sat_1v(parse("v2(2*x - 200) >= v2(x - 100) + 2", P2), "x"), SatResult::with(100));
}

TEST(Oracle, AxiomSuite) {
    for (int p : {2, 3, 5})
        for (int a = -200; a <= 200; a += 7)
            for (int b = -200; b <= 200; b += 3) {
                ValN va = valuation(p, a), vb = valuation(p, b), vs = valuation(p, a + b);
                ASSERT_GE(vs, std::min(va, vb));
                if (va != vb) ASSERT_EQ(vs, std::min(va, vb));
            }
    for (int p : {2, 3})
        for (int c2 = 0; c2 <= 12; ++c2) EXPECT_EQ(valuation(p, ipow(p, c2)), ValN::fin(c2));
}
