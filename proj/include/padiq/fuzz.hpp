#pragma once

#include "padiq/formula.hpp"
#include "padiq/qe.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace padiq {

struct FuzzConfig {
    PrimeSet primes{{2, 3}};
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    int max_coeff = 6;
    int max_depth = 5;
    int max_modulus = 12;
    int max_vars = 3;
    int max_quantifiers = 2;
    std::size_t samples = 100;       // assignments per formula with free variables
    std::size_t window_cap = 4000000; // largest exhaustive oracle window
    QeConfig qe;
};

/// Random formula within the configured caps; valuation atoms 60%,
/// congruences 30%, equations 10%.
Formula random_formula(std::mt19937_64& rng, const FuzzConfig& cfg);

/// Truth of an arbitrary formula under an assignment of its free variables.
/// Innermost quantifiers are decided by brute force; an outer quantifier
/// scans the search window of the eliminated form of its body.
bool oracle_eval(const Formula& f, const Assignment& values, const FuzzConfig& cfg);

enum class TrialStatus { Agree, Mismatch, Error, Resource };

struct TrialResult {
    std::size_t index = 0;
    std::string input;
    std::string output;
    TrialStatus status = TrialStatus::Agree;
    std::string detail;
    std::size_t checks = 0;  // assignments compared
    double millis = 0;
};

struct FuzzReport {
    std::vector<TrialResult> trials;

    std::size_t count(TrialStatus s) const;
    bool all_agree() const { return count(TrialStatus::Agree) == trials.size(); }
    /// Deterministic text summary (no timings).
    std::string summary() const;
};

/// Eliminate quantifiers from f and compare against the oracle. Also checks
/// that the output is quantifier-free, survives render/parse, and is a fixed
/// point of eliminate_quantifiers.
TrialResult run_trial(const Formula& f, const FuzzConfig& cfg, std::mt19937_64& rng);

FuzzReport fuzz_check(const FuzzConfig& cfg);

const char* to_string(TrialStatus s);

}  // namespace padiq
