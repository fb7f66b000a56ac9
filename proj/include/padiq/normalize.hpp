#pragma once

#include "padiq/ball.hpp"
#include "padiq/formula.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace padiq {

/// A valuation-valued expression: either a constant or v_p(t) + offset for a
/// term t that does not mention the eliminated variable.
struct ValExpr {
    std::optional<Term> term;
    std::int64_t offset = 0;

    static ValExpr constant(std::int64_t c) { return {std::nullopt, c}; }
    static ValExpr of_term(Term t, std::int64_t k) { return {std::move(t), k}; }

    bool is_constant() const { return !term.has_value(); }
    ValExpr plus(std::int64_t k) const { return {term, offset + k}; }
    std::string to_string(const Int& p) const;

    friend bool operator==(const ValExpr&, const ValExpr&) = default;
};

/// v_p(t) >= r as a formula (a D atom for constant r).
Formula valuation_at_least(const Int& p, const Term& t, const ValExpr& r);

/// a <= b over a prime; symbolic sides compile to ValLe atoms. Terms of
/// symbolic sides are assumed nonzero.
Formula radius_le(const Int& p, const ValExpr& a, const ValExpr& b);
Formula radius_eq(const Int& p, const ValExpr& a, const ValExpr& b);

/// t = coeff·x + rest
struct Linear {
    Int coeff;
    Term rest;
};
Linear split_linear(const Term& t, const std::string& x);

/// One-sided constraint on v_q(y - center): a lower bound v >= radius, or a
/// hole v < radius.
struct Bound {
    Term center;
    ValExpr radius;

    friend bool operator==(const Bound&, const Bound&) = default;
};

struct PrimeBounds {
    std::vector<Bound> lower;
    std::vector<Bound> holes;
};

/// The one-variable normal form of a conjunction, in y = factor·x. Prime
/// power congruences at primes outside P are kept as constant-radius bounds
/// at those primes; together they form the coprime congruence.
struct NormalForm1V {
    Int factor = 1;
    std::vector<Term> disequalities;  // y != a
    std::map<Int, PrimeBounds> primes;

    /// The conjunction this form stands for, written in `y`.
    Formula to_formula(const std::string& y) const;
};

/// A parameter guard with either a normal form in the variable or a result
/// in which the variable was already eliminated (equality case).
struct GuardedForm {
    Formula guard;
    std::optional<NormalForm1V> form;
    Formula resolved;
    /// Equality case: the pinned equation in y = factor·x.
    Int factor = 1;
    std::optional<Term> equation;
};

/// Split a conjunction of NNF literals (and nested And/Or) over x into
/// guarded normal forms whose disjunction is equivalent to it. Guards are
/// parameter literals, including zero tests on symbolic radii.
std::vector<GuardedForm> normalize_conjunct(const std::vector<Formula>& lits, const std::string& x);

// Individual passes.

/// Equality discharge: with n·x + s = 0 among the literals, the equivalent
/// x-free conjunction D_|n|(s) ∧ rest[n·x := -s]. Nothing if no literal is an
/// equation in x.
std::optional<Formula> discharge_equality(const std::vector<Formula>& lits, const std::string& x);

/// Rewrite literals in y = factor·x, reusing the name x; adds D_factor(y).
struct Unified {
    Int factor = 1;
    std::vector<Formula> lits;
};
Unified unify_coefficient(const std::vector<Formula>& lits, const std::string& x);

/// Equivalent formula for a valuation atom with x on both sides in which
/// every valuation atom has x on at most one side.
Formula one_sided_valuations(const Atom& a, const std::string& x);

/// Apply one_sided_valuations to every such atom of f.
Formula make_one_sided(const Formula& f, const std::string& x);

/// D-literals in x to a disjunction of D_N(x - r) under parameter guards,
/// N the lcm of the moduli. Throws ResourceError when N exceeds the cap.
Formula merge_congruences(const std::vector<Formula>& lits, const std::string& x,
                          std::size_t residue_cap = 360);

/// D_m(x - r) with m = p^k·m' to D_m'(x - r mod m') ∧ v_p(x - r mod p^k) >= k.
Formula split_prime_part(const Atom& div, const std::string& x, const Int& p);

/// One lower-bound ball and an antichain of holes strictly inside it, or
/// nothing when the bounds have no common solution. Needs constant radii
/// and ground centres.
struct ReducedBounds {
    Ball lower;
    std::vector<Ball> holes;
};
std::optional<ReducedBounds> reduce_prime_bounds(const Int& p, const PrimeBounds& b);

/// Formula-level reduce pass over a grounded one-variable conjunction.
Formula reduce_bounds(const std::vector<Formula>& lits, const std::string& x);

}  // namespace padiq
