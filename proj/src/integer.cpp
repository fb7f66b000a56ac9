#include "padiq/integer.hpp"

#include "padiq/error.hpp"

#include <cctype>

namespace padiq {

Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

Int gcd(const Int& a, const Int& b) {
    Int x = abs(a), y = abs(b);
    while (y != 0) {
        Int r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

Int lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return abs(a / gcd(a, b) * b);
}

Int mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

Int exact_div(const Int& a, const Int& m) { return a / m; }

Int ipow(const Int& base, std::int64_t exp) {
    Int result = 1;
    Int b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<Int, std::int64_t>> factorize(Int n) {
    std::vector<std::pair<Int, std::int64_t>> out;
    n = abs(n);
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        std::int64_t e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::int64_t valuation_nz(const Int& p, const Int& a) {
    std::int64_t k = 0;
    Int x = abs(a);
    while (x % p == 0) {
        x /= p;
        ++k;
    }
    return k;
}

ValN valuation(const Int& p, const Int& a) {
    if (a == 0) return ValN::infinity();
    return ValN::fin(valuation_nz(p, a));
}

Int parse_int(const std::string& text) {
    if (text.empty()) throw DomainError("empty integer literal");
    std::size_t i = text[0] == '-' ? 1 : 0;
    if (i == text.size()) throw DomainError("bad integer literal '" + text + "'");
    for (std::size_t j = i; j < text.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(text[j])))
            throw DomainError("bad integer literal '" + text + "'");
    return Int(text);
}

Int crt_pair(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
    // extended Euclid for the inverse of m1 modulo m2
    Int old_r = mod(m1, m2), r = m2, old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (m2 == 1) return mod(r1, m1);
    Int inv = mod(old_s, m2);
    Int k = mod((r2 - r1) * inv, m2);
    return mod(r1 + m1 * k, m1 * m2);
}

}  // namespace padiq
