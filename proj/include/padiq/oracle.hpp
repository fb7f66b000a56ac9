#pragma once

#include "padiq/formula.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace padiq {

/// Outcome of a one-variable satisfiability query.
struct SatResult {
    bool sat = false;
    Int witness = 0;  // meaningful only when sat

    static SatResult unsat() { return {}; }
    static SatResult with(Int w) { return {true, std::move(w)}; }

    friend bool operator==(const SatResult&, const SatResult&) = default;
};

/// Truth of a quantifier-free formula in (Z, +, 0, |_p). Throws DomainError on
/// an unassigned variable or a quantifier.
bool eval_qf(const Formula& f, const Assignment& values);

bool eval_atom(const Atom& a, const Assignment& values);

struct PeriodBound {
    Int period = 1;          // M
    std::size_t eq_atoms = 0;  // d
};

/// Period of the solution set of f in `var` once Eq atoms are deleted, and
/// the number of Eq atoms in `var`. f must be quantifier-free with `var` its
/// only free variable. A valuation atom with `var` on both sides whose sides
/// differ by a constant multiple counts as an Eq atom (it pins one point or
/// holds everywhere).
PeriodBound period_bound(const Formula& f, const std::string& var);

/// Integer roots of the Eq atoms of f in `var`.
std::vector<Int> eq_roots(const Formula& f, const std::string& var);

/// The exhaustive search window [-(d+1)M, (d+1)M] plus Eq roots, in order of
/// increasing absolute value (ties: positive first).
std::vector<Int> search_points(const PeriodBound& b, std::vector<Int> roots);

/// Complete brute-force satisfiability for one-variable formulas. The
/// witness is the satisfying value of least absolute value, ties positive.
SatResult brute_force_sat_1v(const Formula& f, const std::string& var);

/// Closed sentence: evaluate with the empty assignment.
inline bool eval_ground(const Formula& f) { return eval_qf(f, {}); }

}  // namespace padiq
