#include "padiq/term.hpp"

#include "padiq/error.hpp"

namespace padiq {

Term Term::constant(Int c) {
    Term t;
    t.constant_ = std::move(c);
    return t;
}

Term Term::variable(const std::string& name, Int coeff) {
    Term t;
    t.add_monomial(name, coeff);
    return t;
}

void Term::add_monomial(const std::string& v, const Int& c) {
    if (c == 0) return;
    auto it = coeffs_.find(v);
    if (it == coeffs_.end()) {
        coeffs_.emplace(v, c);
        return;
    }
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
}

Int Term::coeff(const std::string& v) const {
    auto it = coeffs_.find(v);
    return it == coeffs_.end() ? Int(0) : it->second;
}

Term Term::without(const std::string& v) const {
    Term t = *this;
    t.coeffs_.erase(v);
    return t;
}

Term Term::substitute(const std::string& v, const Term& by) const {
    auto it = coeffs_.find(v);
    if (it == coeffs_.end()) return *this;
    Int c = it->second;
    return without(v) + c * by;
}

Term Term::substitute(const Assignment& values) const {
    Term t;
    t.constant_ = constant_;
    for (const auto& [v, c] : coeffs_) {
        auto it = values.find(v);
        if (it == values.end())
            t.add_monomial(v, c);
        else
            t.constant_ += c * it->second;
    }
    return t;
}

Int Term::eval(const Assignment& values) const {
    Int r = constant_;
    for (const auto& [v, c] : coeffs_) {
        auto it = values.find(v);
        if (it == values.end()) throw DomainError("unassigned variable '" + v + "'");
        r += c * it->second;
    }
    return r;
}

Int Term::coeff_content() const {
    Int g = 0;
    for (const auto& [v, c] : coeffs_) g = gcd(g, c);
    return g;
}

bool Term::is_sign_normalized() const {
    if (coeffs_.empty()) return constant_ >= 0;
    return coeffs_.begin()->second > 0;
}

Term Term::sign_normalized() const { return is_sign_normalized() ? *this : -*this; }

void Term::free_vars(std::set<std::string>& out) const {
    for (const auto& [v, c] : coeffs_) out.insert(v);
}

std::string Term::to_string() const {
    std::string out;
    bool first = true;
    auto emit = [&](Int c, const std::string& name) {
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (name.empty())
            out += c.str();
        else if (c == 1)
            out += name;
        else
            out += c.str() + "*" + name;
        first = false;
    };
    for (const auto& [v, c] : coeffs_) emit(c, v);
    if (constant_ != 0 || first) emit(constant_, "");
    return out;
}

Term operator+(const Term& a, const Term& b) {
    Term r = a;
    r.constant_ += b.constant_;
    for (const auto& [v, c] : b.coeffs_) r.add_monomial(v, c);
    return r;
}

Term operator-(const Term& a) {
    Term r;
    r.constant_ = -a.constant_;
    for (const auto& [v, c] : a.coeffs_) r.coeffs_.emplace(v, -c);
    return r;
}

Term operator-(const Term& a, const Term& b) { return a + (-b); }

Term operator*(const Int& k, const Term& a) {
    Term r;
    if (k == 0) return r;
    r.constant_ = k * a.constant_;
    for (const auto& [v, c] : a.coeffs_) r.coeffs_.emplace(v, k * c);
    return r;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
    auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin();
    for (; ia != a.coeffs_.end() && ib != b.coeffs_.end(); ++ia, ++ib) {
        if (auto c = ia->first <=> ib->first; c != 0) return c;
        if (ia->second != ib->second)
            return ia->second < ib->second ? std::strong_ordering::less
                                           : std::strong_ordering::greater;
    }
    if (ia != a.coeffs_.end()) return std::strong_ordering::greater;
    if (ib != b.coeffs_.end()) return std::strong_ordering::less;
    if (a.constant_ == b.constant_) return std::strong_ordering::equal;
    return a.constant_ < b.constant_ ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace padiq
