#pragma once

#include "padiq/integer.hpp"
#include "padiq/term.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace padiq {

/// Finite, sorted set of distinct primes fixed for a run.
class PrimeSet {
public:
    PrimeSet() = default;
    /// Validates, sorts and deduplicates; throws DomainError on a non-prime
    /// or an empty list.
    explicit PrimeSet(std::vector<Int> primes);

    static PrimeSet parse(const std::string& csv);

    const std::vector<Int>& primes() const { return primes_; }
    bool contains(const Int& p) const;
    std::string to_string() const;

private:
    std::vector<Int> primes_;
};

enum class AtomKind { Eq, Div, ValLe };

/// One of the three atom shapes:
///   Eq(t)                 t = 0
///   Div(m, t)             m | t
///   ValLe(p, k, t1, t2)   v_p(t1) + k <= v_p(t2)
///
/// Valuations live in N ∪ {∞} with ∞ + k = ∞ and ∞ <= ∞, so
/// ValLe(p, k, t1, t2) holds exactly when p^k·t1 |_p t2 (k >= 0) or
/// t1 |_p p^{-k}·t2 (k < 0).
struct Atom {
    AtomKind kind = AtomKind::Eq;
    Int modulus = 0;  // Div only
    Int prime = 0;    // ValLe only
    std::int64_t offset = 0;  // ValLe only
    Term lhs;
    Term rhs;  // ValLe only

    static Atom eq(Term t);
    static Atom div(Int m, Term t);
    static Atom val_le(Int p, std::int64_t k, Term t1, Term t2);

    bool mentions(const std::string& v) const { return lhs.mentions(v) || rhs.mentions(v); }

    friend bool operator==(const Atom& a, const Atom& b) = default;
    friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
};

enum class Kind { True, False, Atom, Not, And, Or, Exists, Forall };

/// Immutable formula handle. Copies share structure.
class Formula {
public:
    Formula();  // True

    Kind kind() const { return node_->kind; }
    const padiq::Atom& atom() const { return node_->atom; }
    const std::vector<Formula>& children() const { return node_->kids; }
    /// The single child of Not / Exists / Forall.
    const Formula& child() const { return node_->kids.front(); }
    const std::string& var() const { return node_->var; }

    bool is_true() const { return kind() == Kind::True; }
    bool is_false() const { return kind() == Kind::False; }
    bool is_atom() const { return kind() == Kind::Atom; }
    /// Atom or negated atom.
    bool is_literal() const;

    // Raw constructors: no simplification. Prefer the make_* builders.
    static Formula raw_true();
    static Formula raw_false();
    static Formula raw_atom(padiq::Atom a);
    static Formula raw_not(Formula f);
    static Formula raw_nary(Kind k, std::vector<Formula> kids);
    static Formula raw_quant(Kind k, std::string var, Formula body);

    friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);
    friend bool operator==(const Formula& a, const Formula& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }

private:
    struct Node {
        Kind kind;
        padiq::Atom atom;
        std::vector<Formula> kids;
        std::string var;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Canonicalising builders. Every formula produced through these is in
// canonical form: atoms normalised (ground atoms evaluated, sign-normalised
// terms, constant valuation sides folded into the offset), And/Or flattened,
// sorted, deduplicated, with ⊤/⊥ absorbed and complementary literals
// collapsed.
Formula make_true();
Formula make_false();
Formula make_bool(bool b);
Formula make_atom(const Atom& a);
Formula make_eq(const Term& t);
Formula make_ne(const Term& t);
Formula make_div(const Int& m, const Term& t);
Formula make_val_le(const Int& p, std::int64_t k, const Term& t1, const Term& t2);
Formula make_not(const Formula& f);
Formula make_and(std::vector<Formula> kids);
Formula make_or(std::vector<Formula> kids);
Formula make_and(const Formula& a, const Formula& b);
Formula make_or(const Formula& a, const Formula& b);
Formula make_implies(const Formula& a, const Formula& b);
Formula make_exists(const std::string& v, const Formula& body);
Formula make_forall(const std::string& v, const Formula& body);

/// Rebuild bottom-up through the builders.
Formula canonicalize(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
bool mentions(const Formula& f, const std::string& v);
bool is_quantifier_free(const Formula& f);
std::size_t quantifier_count(const Formula& f);
std::size_t node_count(const Formula& f);

/// Replace the free occurrences of v by t. Throws DomainError when a variable
/// of t would be captured by a quantifier of f.
Formula substitute(const Formula& f, const std::string& v, const Term& t);

/// Substitute every assigned variable (free occurrences only).
Formula substitute_all(const Formula& f, const Assignment& values);

/// Negation normal form: negations only on Eq / Div atoms; ¬ValLe becomes
///   ValLe(p, 1-k, t2, t1) ∧ t2 ≠ 0
/// (the disequality is omitted when t1 is a nonzero constant, where it is
/// implied); quantifiers are dualised.
Formula to_nnf(const Formula& f);

/// Exact negation of a single literal, in NNF.
Formula negate_literal(const Formula& lit);

/// Disjunctive normal form of a quantifier-free NNF formula as a list of
/// literal conjunctions. Throws ResourceError once more than `literal_cap`
/// literals would be produced.
std::vector<std::vector<Formula>> to_dnf(const Formula& nnf, std::size_t literal_cap);

}  // namespace padiq
