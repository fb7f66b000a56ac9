#include "padiq/error.hpp"
#include "padiq/normalize.hpp"
#include "padiq/oracle.hpp"
#include "padiq/qe.hpp"
#include "padiq/syntax.hpp"

#include "printers.hpp"

#include <gtest/gtest.h>

using namespace padiq;

namespace {

const PrimeSet P2{{2}};
const PrimeSet P23{{2, 3}};

Formula qe(const std::string& s, const PrimeSet& p = P2) { return eliminate_quantifiers(parse(s, p)); }

bool decide(const std::string& s, const PrimeSet& p = P23) { return decide_sentence(parse(s, p)); }

/// ∃x body at a, by brute force.
bool oracle_exists(const Formula& body, const std::string& x, const Assignment& params) {
    return brute_force_sat_1v(substitute_all(body, params), x).sat;
}

}  // namespace

TEST(Qe, ExistsExamples) {
    EXPECT_EQ(render(qe("E x. v2(x - a) >= 1 && v2(x) >= 1")), "D2(a)");
    EXPECT_TRUE(qe("E x. v2(x) >= 1 && !(v2(x) >= 2) && !(v2(x - 2) >= 2)").is_false());
    EXPECT_TRUE(qe("E x. D3(x - 1) && v2(x) >= 2").is_true());
}

TEST(Qe, ExistsAgainstOracle) {
    Formula f = qe("E x. v2(x - a) >= 1 && v2(x) >= 1");
    Formula body = parse("v2(x - a) >= 1 && v2(x) >= 1", P2);
    for (int a = -20; a <= 20; ++a)
        EXPECT_EQ(eval_qf(f, {{"a", a}}), oracle_exists(body, "x", {{"a", a}})) << a;
}

TEST(Qe, Density) {
    Formula f = qe("E x. v2(x - y) >= 2 && D3(x)", P23);
    EXPECT_TRUE(f.is_true()) << render(f);
}

TEST(Qe, UniversalAndIdentity) {
    EXPECT_TRUE(qe("A x. D2(x) -> D2(x + 2)").is_true());
    Formula g = parse("v2(y) >= 3 || D3(y + 1)", P23);
    EXPECT_EQ(eliminate_quantifiers(g), canonicalize(to_nnf(g)));
}

TEST(Qe, SymbolicRadii) {
    const char* bodies[] = {
        "v2(x - a) >= v2(b) + 1 && v2(x) < v2(b) + 2",
        "v2(x - a) < v2(x - b) + 1",
        "v2(x) <= v2(x - a) && D3(x - b)",
        "v2(2*x - a) >= 2 && v2(3*x - b) >= 1 && x != a",
        "v3(x - a) >= 1 && !(v3(x - b) >= 2) && !(v3(x - a - 3) >= 2) && !(v3(x - a - 6) >= 2)",
        "v2(x - a) >= v2(b) && !(v2(x - a) >= v2(b) + 1)",
        "v2(x) > v2(a) && v2(x - b) > v2(a) && v2(x - b) <= v2(a) + 1 && v2(x) < v2(a) + 2",
        "2*x = a + b && D3(x)",
        "3*x = a && v2(x - b) >= 1",
    };
    for (const char* s : bodies) {
        Formula body = parse(s, P23);
        Formula f = eliminate_quantifiers(make_exists("x", body));
        ASSERT_TRUE(is_quantifier_free(f));
        for (int a = -9; a <= 9; ++a)
            for (int b = -9; b <= 9; ++b) {
                Assignment at{{"a", a}, {"b", b}};
                ASSERT_EQ(eval_qf(f, at), oracle_exists(body, "x", at))
                    << s << " at a=" << a << " b=" << b << "\n  qe: " << render(f);
            }
    }
}

TEST(Decide, Examples) {
    EXPECT_TRUE(decide("E x. v2(x) = 3 && D3(x)"));
    EXPECT_TRUE(decide("A x. A y. v2(x) <= v2(y) -> v2(x) <= v2(x + y)"));
    EXPECT_FALSE(decide("E x. D2(x) && !D2(x)"));
    EXPECT_TRUE(decide("E x. v2(x) >= 2 && D3(x - 1)"));
    EXPECT_THROW(decide("D2(x)"), DomainError);
}

TEST(Solve, Examples) {
    auto r = solve_grounded_1v(parse("v2(x - 1) >= 2 && D3(x)", P23), "x");
    EXPECT_EQ(r.result, SatResult::with(9));
    EXPECT_EQ(r.certificate.modulus, 12);
    r = solve_grounded_1v(parse("v2(x) >= 1 && !(v2(x) >= 2) && !(v2(x - 2) >= 2)", P2), "x");
    EXPECT_FALSE(r.result.sat);
    r = solve_grounded_1v(parse("x != 0 && v2(x) >= 5", P2), "x");
    EXPECT_EQ(r.result, SatResult::with(32));
    r = solve_grounded_1v(parse("3*x = 12 && D2(x)", P2), "x");
    EXPECT_EQ(r.result, SatResult::with(4));
}

TEST(Subgroups, Examples) {
    auto s = recognize_subgroup(parse("D6(x)", P2), "x", P2);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->cofactor, 3);
    EXPECT_EQ(s->gamma.at(2), 1);
    EXPECT_FALSE(recognize_subgroup(parse("D2(x - 1)", P2), "x", P2));
    s = recognize_subgroup(parse("x = 0", P2), "x", P2);
    ASSERT_TRUE(s);
    EXPECT_TRUE(s->trivial);
}

TEST(Normalize, Passes) {
    auto lits = [](const std::string& s, const PrimeSet& p) {
        Formula f = parse(s, p);
        return f.kind() == Kind::And ? f.children() : std::vector<Formula>{f};
    };
    EXPECT_EQ(render(merge_congruences(lits("D2(x) && D3(x - 1)", P2), "x")), "D6(x - 4)");
    EXPECT_EQ(render(merge_congruences(lits("!D2(x)", P2), "x")), "D2(x - 1)");
    EXPECT_TRUE(merge_congruences(lits("D2(x) && D2(x - 1)", P2), "x").is_false());
    EXPECT_THROW(merge_congruences(lits("D7(x) && D11(x) && D13(x)", P2), "x", 360), ResourceError);

    EXPECT_EQ(split_prime_part(parse("D12(x - 5)", P2).atom(), "x", 2), parse("D3(x - 2) && v2(x - 1) >= 2", P2));
    EXPECT_EQ(split_prime_part(parse("D8(x)", P2).atom(), "x", 2), parse("v2(x) >= 3", P2));
    EXPECT_EQ(split_prime_part(parse("D3(x)", P2).atom(), "x", 2), parse("D3(x)", P2));

    Term x = Term::variable("x");
    EXPECT_EQ(one_sided_valuations(Atom::val_le(2, 1, x, x - Term::constant(4)), "x"), parse("v2(x - 4) >= 3", P2));
    // at x = a both valuations are infinite
    EXPECT_EQ(parse("v2(x - a) < v2(x - a) + 1", P2), parse("x != a", P2));
    Formula three = one_sided_valuations(Atom::val_le(2, 0, x - Term::variable("a"), x - Term::variable("b")), "x");
    EXPECT_EQ(three.kind(), Kind::Or);
    EXPECT_EQ(three.children().size(), 3u);

    Unified u = unify_coefficient(lits("v2(2*x - a) >= 3 && v2(3*x - b) >= 1", P2), "x");
    EXPECT_EQ(u.factor, 6);
    EXPECT_EQ(make_and(u.lits), parse("D6(x) && v2(x - 3*a) >= 3 && v2(x - 2*b) >= 2", P2));
    u = unify_coefficient(lits("v3(3*x) >= 2", PrimeSet({3})), "x");
    EXPECT_EQ(u.factor, 3);
    EXPECT_EQ(make_and(u.lits), parse("D3(x) && v3(x) >= 2", PrimeSet({3})));

    EXPECT_EQ(render(reduce_bounds(lits("v2(x) >= 2 && v2(x - 4) >= 1", P2), "x")), "v2(x) >= 2");
    EXPECT_EQ(render(reduce_bounds(lits("v2(x) >= 2 && !(v2(x - 1) >= 1)", P2), "x")), "v2(x) >= 2");
    EXPECT_TRUE(reduce_bounds(lits("v2(x) >= 2 && !(v2(x - 4) >= 2)", P2), "x").is_false());
}
