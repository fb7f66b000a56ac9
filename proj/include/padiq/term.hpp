#pragma once

#include "padiq/integer.hpp"

#include <compare>
#include <map>
#include <set>
#include <string>

namespace padiq {

using Assignment = std::map<std::string, Int>;

/// Affine integer combination  c + Σ a_v·v  with no stored zero coefficient.
/// Equality is structural, which is also semantic equality of the polynomials.
class Term {
public:
    Term() = default;

    static Term constant(Int c);
    static Term variable(const std::string& name, Int coeff = 1);

    const Int& constant_part() const { return constant_; }
    const std::map<std::string, Int>& coefficients() const { return coeffs_; }

    /// Coefficient of v (zero when absent).
    Int coeff(const std::string& v) const;
    bool mentions(const std::string& v) const { return coeffs_.count(v) != 0; }
    bool is_ground() const { return coeffs_.empty(); }
    bool is_zero() const { return coeffs_.empty() && constant_ == 0; }
    bool is_one() const { return coeffs_.empty() && constant_ == 1; }

    /// The term with v's monomial removed.
    Term without(const std::string& v) const;

    Term substitute(const std::string& v, const Term& by) const;
    Term substitute(const Assignment& values) const;

    Int eval(const Assignment& values) const;

    /// gcd of all coefficients (0 for a ground term).
    Int coeff_content() const;

    /// Multiply by -1 if needed so that the first coefficient (by variable
    /// name), or the constant of a ground term, is nonnegative.
    Term sign_normalized() const;
    bool is_sign_normalized() const;

    void free_vars(std::set<std::string>& out) const;

    std::string to_string() const;

    friend Term operator+(const Term& a, const Term& b);
    friend Term operator-(const Term& a, const Term& b);
    friend Term operator-(const Term& a);
    friend Term operator*(const Int& k, const Term& a);

    friend bool operator==(const Term& a, const Term& b) {
        return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
    }
    friend std::strong_ordering operator<=>(const Term& a, const Term& b);

private:
    void add_monomial(const std::string& v, const Int& c);

    Int constant_ = 0;
    std::map<std::string, Int> coeffs_;
};

}  // namespace padiq
