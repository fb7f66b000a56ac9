#include "padiq/qe.hpp"

#include "padiq/error.hpp"

#include <algorithm>
#include <functional>

namespace padiq {

namespace {

Formula negated(const Formula& f) { return to_nnf(make_not(f)); }

/// κ is determined when both radii share their symbolic part.
std::optional<std::int64_t> fixed_offset(const ValExpr& s, const ValExpr& g0) {
    if (s.term == g0.term) return s.offset - g0.offset;
    return std::nullopt;
}

/// The ball B(a0, g0) is a subset of the union of the holes.
Formula covered(const Int& p, const Term& a0, const ValExpr& g0, const std::vector<Bound>& holes,
                std::size_t case_cap) {
    std::vector<Formula> cases;
    for (const auto& h : holes)
        cases.push_back(make_and(radius_le(p, h.radius, g0), valuation_at_least(p, a0 - h.center, h.radius)));

    // Exact tilings by holes strictly inside: offsets κ >= 1 with Σ p^-κ = 1.
    // A tiling by n balls never needs κ > n - 1.
    const std::size_t n = holes.size();
    if (n >= 2) {
        const std::int64_t depth = static_cast<std::int64_t>(n) - 1;
        const Int target = ipow(p, depth);
        std::vector<std::pair<std::size_t, std::int64_t>> chosen;
        std::function<void(std::size_t, const Int&)> dfs = [&](std::size_t j, const Int& remaining) {
            if (remaining == 0) {
                if (chosen.size() < 2) return;
                std::vector<Formula> parts;
                std::int64_t kmin = chosen.front().second;
                for (const auto& [m, k] : chosen) kmin = std::min(kmin, k);
                for (const auto& [m, k] : chosen) {
                    parts.push_back(radius_eq(p, holes[m].radius, g0.plus(k)));
                    parts.push_back(valuation_at_least(p, holes[m].center - a0, g0));
                }
                for (std::size_t u = 0; u < chosen.size(); ++u)
                    for (std::size_t w = u + 1; w < chosen.size(); ++w) {
                        const auto& [m1, k1] = chosen[u];
                        const auto& [m2, k2] = chosen[w];
                        parts.push_back(negated(valuation_at_least(p, holes[m1].center - holes[m2].center,
                                                                   g0.plus(std::min(k1, k2)))));
                    }
                Formula c = make_and(std::move(parts));
                if (!c.is_false()) cases.push_back(c);
                if (cases.size() > case_cap)
                    throw ResourceError("emptiness test needs more than " + std::to_string(case_cap) + " cases");
                return;
            }
            if (j == n) return;
            dfs(j + 1, remaining);
            std::int64_t lo = 1, hi = depth;
            if (auto k = fixed_offset(holes[j].radius, g0)) lo = hi = *k;
            for (std::int64_t k = std::max<std::int64_t>(lo, 1); k <= std::min(hi, depth); ++k) {
                Int w = ipow(p, depth - k);
                if (w > remaining) continue;
                chosen.emplace_back(j, k);
                dfs(j + 1, remaining - w);
                chosen.pop_back();
            }
        };
        dfs(0, target);
    }
    return make_or(std::move(cases));
}

}  // namespace

Formula nonempty_condition(const Int& p, const PrimeBounds& b, std::size_t case_cap) {
    std::vector<Bound> lower{{Term::constant(0), ValExpr::constant(0)}};
    lower.insert(lower.end(), b.lower.begin(), b.lower.end());
    std::vector<Formula> cases;
    // The intersection of the lower balls is the first one of maximal radius,
    // provided it lies inside all others.
    for (std::size_t i0 = 0; i0 < lower.size(); ++i0) {
        const Bound& top = lower[i0];
        std::vector<Formula> parts;
        for (std::size_t i = 0; i < lower.size(); ++i) {
            if (i == i0) continue;
            ValExpr r = i < i0 ? lower[i].radius.plus(1) : lower[i].radius;
            parts.push_back(radius_le(p, r, top.radius));
            parts.push_back(valuation_at_least(p, top.center - lower[i].center, lower[i].radius));
        }
        Formula c = make_and(std::move(parts));
        if (c.is_false()) continue;
        cases.push_back(make_and(c, negated(covered(p, top.center, top.radius, b.holes, case_cap))));
    }
    return make_or(std::move(cases));
}

Formula eliminate_exists_1v(const std::vector<Formula>& conj, const std::string& x, const QeConfig& cfg) {
    std::vector<Formula> cases;
    for (const auto& g : normalize_conjunct(conj, x)) {
        if (!g.form) {
            cases.push_back(make_and(g.guard, g.resolved));
            continue;
        }
        // Disequalities never matter: the remaining set is empty or infinite.
        std::vector<Formula> parts{g.guard};
        for (const auto& [q, b] : g.form->primes) {
            parts.push_back(nonempty_condition(q, b, cfg.node_cap));
            if (parts.back().is_false()) break;
        }
        cases.push_back(make_and(std::move(parts)));
    }
    return to_nnf(make_or(std::move(cases)));
}

namespace {

Formula exists_qf(const std::string& x, const Formula& body, const QeConfig& cfg) {
    Formula nnf = to_nnf(body);
    if (!mentions(nnf, x)) return nnf;
    std::vector<Formula> cases;
    for (const auto& conj : to_dnf(nnf, cfg.node_cap)) cases.push_back(eliminate_exists_1v(conj, x, cfg));
    return to_nnf(make_or(std::move(cases)));
}

Formula elim(const Formula& f, const QeConfig& cfg) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False:
        case Kind::Atom: return f;
        case Kind::Not: return to_nnf(make_not(elim(f.child(), cfg)));
        case Kind::And:
        case Kind::Or: {
            std::vector<Formula> kids;
            for (const auto& c : f.children()) kids.push_back(elim(c, cfg));
            return f.kind() == Kind::And ? make_and(std::move(kids)) : make_or(std::move(kids));
        }
        case Kind::Exists: return exists_qf(f.var(), elim(f.child(), cfg), cfg);
        case Kind::Forall:
            return to_nnf(make_not(exists_qf(f.var(), make_not(elim(f.child(), cfg)), cfg)));
    }
    return f;
}

}  // namespace

Formula eliminate_quantifiers(const Formula& f, const QeConfig& cfg) { return to_nnf(elim(f, cfg)); }

bool decide_sentence(const Formula& f, const QeConfig& cfg) {
    auto fv = free_vars(f);
    if (!fv.empty()) throw DomainError("not a sentence: free variable '" + *fv.begin() + "'");
    return eval_ground(eliminate_quantifiers(f, cfg));
}

SolveResult solve_grounded_1v(const Formula& input, const std::string& x, const QeConfig& cfg) {
    for (const auto& v : free_vars(input))
        if (v != x) throw DomainError("parameter '" + v + "' has no value");
    Formula f = is_quantifier_free(input) ? input : eliminate_quantifiers(input, cfg);
    auto holds = [&](const Int& v) { return eval_qf(f, {{x, v}}); };

    for (const auto& conj : to_dnf(to_nnf(f), cfg.node_cap)) {
        for (const auto& g : normalize_conjunct(conj, x)) {
            if (!eval_ground(g.guard)) continue;
            if (!g.form) {
                if (!eval_ground(g.resolved)) continue;
                if (!g.equation) {
                    // x is unconstrained in this case
                    if (!holds(0)) continue;
                    SolveResult r{SatResult::with(0), {}};
                    r.certificate.witness = Int(0);
                    r.certificate.note = "no constraint on the variable";
                    return r;
                }
                Linear l = split_linear(*g.equation, x);
                if (l.rest.constant_part() % l.coeff != 0) continue;
                Int y = -l.rest.constant_part() / l.coeff;
                if (y % g.factor != 0) continue;
                Int w = y / g.factor;
                if (!holds(w)) continue;
                SolveResult r{SatResult::with(w), {}};
                r.certificate.factor = g.factor;
                r.certificate.witness = w;
                r.certificate.note = "pinned by an equation";
                return r;
            }
            const NormalForm1V& nf = *g.form;
            ExistenceCertificate cert;
            cert.factor = nf.factor;
            bool empty = false;
            for (const auto& [q, b] : nf.primes) {
                auto red = reduce_prime_bounds(q, b);
                std::optional<Ball> ball;
                if (red) ball = first_residual_ball(red->lower, red->holes);
                if (!ball) {
                    empty = true;
                    break;
                }
                cert.per_prime.emplace(q, *ball);
                Int mq = ipow(q, ball->radius().value());
                cert.residue = crt_pair(cert.residue, cert.modulus, mod(ball->center(), mq), mq);
                cert.modulus *= mq;
            }
            if (empty) continue;
            // Residue class minus finitely many points: walk r, r+M, r-M, ...
            std::vector<Int> avoid;
            for (const auto& a : nf.disequalities) avoid.push_back(a.constant_part());
            Int y = cert.residue;
            for (std::size_t step = 0; step <= 2 * avoid.size() + 2; ++step) {
                Int j = step % 2 == 1 ? Int((step + 1) / 2) : -Int(step / 2);
                y = cert.residue + j * cert.modulus;
                if (std::find(avoid.begin(), avoid.end(), y) != avoid.end()) continue;
                if (y % nf.factor != 0) continue;
                Int w = y / nf.factor;
                if (!holds(w)) continue;
                cert.witness = w;
                return {SatResult::with(w), cert};
            }
        }
    }
    SolveResult r{SatResult::unsat(), {}};
    r.certificate.note = "every case is empty";
    return r;
}

std::string Subgroup::to_string() const {
    if (trivial) return "{0}";
    std::string s = cofactor.str();
    for (const auto& [p, g] : gamma)
        if (g > 0) s += "*" + p.str() + "^" + std::to_string(g);
    return s + "Z";
}

std::optional<Subgroup> recognize_subgroup(const Formula& input, const std::string& x, const PrimeSet& primes) {
    for (const auto& v : free_vars(input))
        if (v != x) throw DomainError("parameter '" + v + "' has no value");
    Formula f = is_quantifier_free(input) ? input : eliminate_quantifiers(input);
    auto member = [&](const Int& v) { return eval_qf(f, {{x, v}}); };
    if (!member(0)) return std::nullopt;

    PeriodBound b = period_bound(f, x);
    std::vector<Int> roots = eq_roots(f, x);
    Int w = Int(b.eq_atoms + 1) * b.period;
    Int g = 0;
    for (Int v = -w; v <= w; ++v)
        if (member(v)) g = gcd(g, v);
    for (const auto& r : roots)
        if (member(r)) g = gcd(g, r);
    if (g == 0) {
        Subgroup s;
        s.trivial = true;
        return s;
    }
    // f agrees with a period-M set off its Eq roots, so a mismatch with gZ
    // shows up in the window of period lcm(M, g).
    Int w2 = Int(b.eq_atoms + 1) * lcm(b.period, g);
    for (Int v = -w2; v <= w2; ++v)
        if (member(v) != (v % g == 0)) return std::nullopt;
    for (const auto& r : roots)
        if (member(r) != (r % g == 0)) return std::nullopt;

    Subgroup s;
    s.generator = g;
    s.cofactor = g;
    for (const auto& p : primes.primes()) {
        std::int64_t e = valuation_nz(p, g);
        s.gamma[p] = e;
        s.cofactor /= ipow(p, e);
    }
    return s;
}

}  // namespace padiq
