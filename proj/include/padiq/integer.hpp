#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace padiq {

using Int = boost::multiprecision::cpp_int;

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int abs(const Int& a);

/// Least nonnegative residue of a modulo m (m > 0).
Int mod(const Int& a, const Int& m);

/// Exact quotient when m divides a.
Int exact_div(const Int& a, const Int& m);

Int ipow(const Int& base, std::int64_t exp);

bool is_prime(const Int& n);

/// Prime factorisation of n >= 1 as (prime, exponent) pairs, ascending.
std::vector<std::pair<Int, std::int64_t>> factorize(Int n);

/// Element of N ∪ {∞}: the codomain of a p-adic valuation.
class ValN {
public:
    static ValN fin(std::int64_t n) { return ValN(false, n); }
    static ValN infinity() { return ValN(true, 0); }

    bool is_infinite() const { return inf_; }
    bool is_finite() const { return !inf_; }
    /// Only meaningful when finite.
    std::int64_t value() const { return n_; }

    /// ∞ + k = ∞; finite values shift by k (the result may be negative).
    ValN plus(std::int64_t k) const { return inf_ ? *this : ValN(false, n_ + k); }

    friend bool operator==(const ValN& a, const ValN& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.n_ == b.n_);
    }
    friend std::strong_ordering operator<=>(const ValN& a, const ValN& b) {
        if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
        return a.n_ <=> b.n_;
    }

    std::string to_string() const { return inf_ ? std::string("inf") : std::to_string(n_); }

private:
    ValN(bool inf, std::int64_t n) : inf_(inf), n_(n) {}
    bool inf_;
    std::int64_t n_;
};

/// v_p(a) by repeated exact division; Infinity iff a = 0.
ValN valuation(const Int& p, const Int& a);

/// Finite valuation of a nonzero integer.
std::int64_t valuation_nz(const Int& p, const Int& a);

/// Parse a decimal integer literal (optional leading '-').
Int parse_int(const std::string& text);

inline std::string to_string(const Int& a) { return a.str(); }

/// Combine x ≡ r1 (mod m1) and x ≡ r2 (mod m2) for coprime moduli.
/// Returns the residue in [0, m1*m2).
Int crt_pair(const Int& r1, const Int& m1, const Int& r2, const Int& m2);

}  // namespace padiq
