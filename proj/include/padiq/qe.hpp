#pragma once

#include "padiq/ball.hpp"
#include "padiq/formula.hpp"
#include "padiq/normalize.hpp"
#include "padiq/oracle.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace padiq {

struct QeConfig {
    std::size_t node_cap = 100000;   // DNF literals and emitted tiling cases
    std::size_t residue_cap = 360;   // congruence residue enumeration
};

/// ∃x over a conjunction of NNF literals, as a quantifier-free formula in the
/// remaining variables.
Formula eliminate_exists_1v(const std::vector<Formula>& conj, const std::string& x, const QeConfig& cfg = {});

/// Full quantifier elimination, innermost quantifier first. The result is in
/// canonical negation normal form.
Formula eliminate_quantifiers(const Formula& f, const QeConfig& cfg = {});

/// Truth of a closed formula in Z. Throws DomainError on free variables.
bool decide_sentence(const Formula& f, const QeConfig& cfg = {});

/// Condition on the parameters under which the bounds at prime p have a
/// common solution. Symbolic radii must have nonzero terms.
Formula nonempty_condition(const Int& p, const PrimeBounds& b, std::size_t case_cap = 100000);

struct ExistenceCertificate {
    std::map<Int, Ball> per_prime;  // residual ball chosen at each prime
    Int modulus = 1;                // combined CRT modulus (in y = factor·x)
    Int residue = 0;
    Int factor = 1;
    std::optional<Int> witness;
    std::string note;
};

struct SolveResult {
    SatResult result;
    ExistenceCertificate certificate;
};

/// Witness construction for a formula whose only free variable is x: pick a
/// residual ball per prime, combine by CRT and step past disequalities. The
/// witness is checked with eval_qf before it is returned.
SolveResult solve_grounded_1v(const Formula& f, const std::string& x, const QeConfig& cfg = {});

/// Canonical description of a definable subgroup of Z.
struct Subgroup {
    bool trivial = false;              // {0}
    Int generator = 0;                 // n'·Π p^γ_p
    Int cofactor = 1;                  // n', coprime to every prime of P
    std::map<Int, std::int64_t> gamma;  // p -> γ_p

    std::string to_string() const;
};

/// The subgroup defined by f in x, or nothing if the set is not a subgroup.
std::optional<Subgroup> recognize_subgroup(const Formula& f, const std::string& x, const PrimeSet& primes);

}  // namespace padiq
