#include "padiq/fuzz.hpp"

#include "padiq/error.hpp"
#include "padiq/oracle.hpp"
#include "padiq/syntax.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

namespace padiq {

namespace {

class Generator {
public:
    Generator(std::mt19937_64& rng, const FuzzConfig& cfg) : rng_(rng), cfg_(cfg) {
        const char* names[] = {"x", "y", "z", "u", "w"};
        for (int i = 0; i < std::clamp(cfg.max_vars, 1, 5); ++i) vars_.push_back(names[i]);
        quantifiers_left_ = cfg.max_quantifiers;
    }

    Formula formula(int depth) {
        if (depth >= cfg_.max_depth - 1) return atom();
        int r = pick(depth == 0 ? 3 : 0, 9);
        if (r <= 2) return atom();
        if (r <= 4) return make_and(formula(depth + 1), formula(depth + 1));
        if (r <= 6) return make_or(formula(depth + 1), formula(depth + 1));
        if (r == 7) return make_not(formula(depth + 1));
        if (quantifiers_left_ <= 0) return make_and(formula(depth + 1), formula(depth + 1));
        --quantifiers_left_;
        std::string v = vars_[pick(0, static_cast<int>(vars_.size()) - 1)];
        Formula body = formula(depth + 1);
        return pick(0, 1) ? make_exists(v, body) : make_forall(v, body);
    }

private:
    int pick(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    Term term() {
        int n = pick(1, std::min<int>(2, static_cast<int>(vars_.size())));
        std::vector<std::string> pool = vars_;
        Term t = Term::constant(pick(-6, 6));
        for (int i = 0; i < n; ++i) {
            std::size_t k = static_cast<std::size_t>(pick(0, static_cast<int>(pool.size()) - 1));
            int c = 0;
            while (c == 0) c = pick(-cfg_.max_coeff, cfg_.max_coeff);
            t = t + Term::variable(pool[k], c);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
        }
        return t;
    }

    Formula atom() {
        int r = pick(0, 9);
        if (r <= 5) {
            const auto& ps = cfg_.primes.primes();
            Int p = ps[static_cast<std::size_t>(pick(0, static_cast<int>(ps.size()) - 1))];
            Term one = Term::constant(1);
            switch (pick(0, 3)) {
                case 0: return make_val_le(p, pick(0, 3), one, term());
                case 1: return make_val_le(p, -pick(0, 2), term(), one);
                default: return make_val_le(p, pick(-1, 1), term(), term());
            }
        }
        if (r <= 8) return make_div(pick(2, cfg_.max_modulus), term());
        return make_eq(term());
    }

    std::mt19937_64& rng_;
    const FuzzConfig& cfg_;
    std::vector<std::string> vars_;
    int quantifiers_left_ = 0;
};

class Oracle {
public:
    explicit Oracle(const FuzzConfig& cfg) : cfg_(cfg) {}

    bool eval(const Formula& f, const Assignment& values) {
        switch (f.kind()) {
            case Kind::True: return true;
            case Kind::False: return false;
            case Kind::Atom: return eval_atom(f.atom(), values);
            case Kind::Not: return !eval(f.child(), values);
            case Kind::And:
                for (const auto& c : f.children())
                    if (!eval(c, values)) return false;
                return true;
            case Kind::Or:
                for (const auto& c : f.children())
                    if (eval(c, values)) return true;
                return false;
            case Kind::Exists:
            case Kind::Forall: return quantifier(f, values);
        }
        return false;
    }

private:
    bool quantifier(const Formula& f, const Assignment& values) {
        const std::string& x = f.var();
        const Formula& body = f.child();
        const bool ex = f.kind() == Kind::Exists;
        Assignment rest = values;
        rest.erase(x);
        if (is_quantifier_free(body)) {
            Formula g = substitute_all(body, rest);
            if (ex) return brute_force_sat_1v(g, x).sat;
            return !brute_force_sat_1v(make_not(g), x).sat;
        }
        auto it = cache_.find(body);
        if (it == cache_.end()) it = cache_.emplace(body, eliminate_quantifiers(body, cfg_.qe)).first;
        Formula g = substitute_all(it->second, rest);
        auto pts = search_points(period_bound(g, x), eq_roots(g, x));
        if (pts.size() > cfg_.window_cap)
            throw ResourceError("oracle window of " + std::to_string(pts.size()) + " points");
        for (const auto& w : pts) {
            rest[x] = w;
            bool v = eval(body, rest);
            if (ex && v) return true;
            if (!ex && !v) return false;
        }
        return !ex;
    }

    const FuzzConfig& cfg_;
    std::map<Formula, Formula> cache_;
};

std::string show(const Assignment& a) {
    std::string s;
    for (const auto& [k, v] : a) s += (s.empty() ? "" : ", ") + k + "=" + v.str();
    return "{" + s + "}";
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, const FuzzConfig& cfg) {
    Generator g(rng, cfg);
    // Round-trip through the text form to get the parser's alpha-renaming.
    return parse(render(g.formula(0)), cfg.primes);
}

bool oracle_eval(const Formula& f, const Assignment& values, const FuzzConfig& cfg) {
    Oracle o(cfg);
    return o.eval(f, values);
}

const char* to_string(TrialStatus s) {
    switch (s) {
        case TrialStatus::Agree: return "agree";
        case TrialStatus::Mismatch: return "mismatch";
        case TrialStatus::Error: return "error";
        case TrialStatus::Resource: return "resource";
    }
    return "?";
}

TrialResult run_trial(const Formula& f, const FuzzConfig& cfg, std::mt19937_64& rng) {
    auto t0 = std::chrono::steady_clock::now();
    TrialResult r;
    r.input = render(f);
    auto fail = [&](TrialStatus s, std::string detail) {
        r.status = s;
        r.detail = std::move(detail);
    };
    try {
        Formula out = eliminate_quantifiers(f, cfg.qe);
        r.output = render(out);
        Oracle oracle(cfg);
        if (!is_quantifier_free(out)) {
            fail(TrialStatus::Mismatch, "output still has quantifiers");
        } else if (parse(r.output, cfg.primes) != out) {
            fail(TrialStatus::Mismatch, "output does not survive render/parse");
        } else if (eliminate_quantifiers(out, cfg.qe) != out) {
            fail(TrialStatus::Mismatch, "output is not a fixed point of elimination");
        } else {
            auto fv = free_vars(f);
            std::vector<std::string> vars(fv.begin(), fv.end());
            auto compare = [&](const Assignment& at) {
                ++r.checks;
                bool want = oracle.eval(f, at);
                bool got = eval_qf(out, at);
                if (want == got) return true;
                fail(TrialStatus::Mismatch, "at " + show(at) + " oracle says " + (want ? "true" : "false"));
                return false;
            };
            if (vars.empty()) {
                compare({});
            } else {
                for (std::size_t s = 0; s < cfg.samples && r.status == TrialStatus::Agree; ++s) {
                    Assignment at;
                    for (const auto& v : vars) at[v] = static_cast<int>(rng() % 101) - 50;
                    compare(at);
                }
                if (vars.size() == 1 && r.status == TrialStatus::Agree) {
                    auto pts = search_points(period_bound(out, vars[0]), eq_roots(out, vars[0]));
                    if (pts.size() <= cfg.window_cap)
                        for (const auto& w : pts)
                            if (!compare({{vars[0], w}})) break;
                }
            }
        }
    } catch (const ResourceError& e) {
        fail(TrialStatus::Resource, e.what());
    } catch (const std::exception& e) {
        fail(TrialStatus::Error, e.what());
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

FuzzReport fuzz_check(const FuzzConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    FuzzReport rep;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Formula f = random_formula(rng, cfg);
        TrialResult t = run_trial(f, cfg, rng);
        t.index = i;
        rep.trials.push_back(std::move(t));
    }
    return rep;
}

std::size_t FuzzReport::count(TrialStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(trials.begin(), trials.end(), [&](const TrialResult& t) { return t.status == s; }));
}

std::string FuzzReport::summary() const {
    std::ostringstream os;
    for (const auto& t : trials) {
        if (t.status == TrialStatus::Agree) continue;
        os << "trial " << t.index << ": " << to_string(t.status) << ": " << t.detail << "\n  input:  " << t.input
           << "\n  output: " << t.output << "\n";
    }
    os << count(TrialStatus::Agree) << "/" << trials.size() << " agree";
    for (auto s : {TrialStatus::Mismatch, TrialStatus::Error, TrialStatus::Resource})
        if (count(s)) os << ", " << count(s) << " " << to_string(s);
    os << "\n";
    return os.str();
}

}  // namespace padiq
