// padiq: quantifier elimination and decisions for Z with p-adic valuations.

#include "padiq/error.hpp"
#include "padiq/formula.hpp"
#include "padiq/fuzz.hpp"
#include "padiq/normalize.hpp"
#include "padiq/oracle.hpp"
#include "padiq/qe.hpp"
#include "padiq/syntax.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace padiq;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kDisagree = 1, kUsage = 2, kResource = 3 };

struct Options {
    std::string primes = "2,3";
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    int max_coeff = 6;
    int max_depth = 5;
    std::size_t node_cap = 100000;
    std::size_t residue_cap = 360;
    bool json = false;
    std::string pass;
    std::string var;
    std::string formula;
};

std::string read_formula(const std::string& arg) {
    if (arg != "-") return arg;
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
}

QeConfig qe_config(const Options& o) { return {o.node_cap, o.residue_cap}; }

std::vector<Formula> conjuncts_of(const Formula& f, std::size_t cap) {
    std::vector<Formula> out;
    for (auto& c : to_dnf(to_nnf(f), cap)) out.push_back(make_and(c));
    return out;
}

std::vector<Formula> literals_of(const Formula& conj) {
    if (conj.kind() == Kind::And) return conj.children();
    if (conj.is_true()) return {};
    return {conj};
}

/// Output lines of a single normalisation pass.
std::vector<std::string> run_pass(const std::string& name, const Formula& input, const PrimeSet& primes,
                                  const Options& o) {
    Formula body = input;
    std::string x = o.var;
    if (input.kind() == Kind::Exists || input.kind() == Kind::Forall) {
        body = input.child();
        if (x.empty()) x = input.var();
    }
    if (x.empty()) x = "x";
    if (!is_quantifier_free(body)) throw DomainError("pass-debug needs a quantifier-free body");

    std::vector<std::string> lines;
    if (name == "nnf") return {render(to_nnf(body))};
    if (name == "one-sided") return {render(make_one_sided(to_nnf(body), x))};
    for (const auto& conj : conjuncts_of(body, o.node_cap)) {
        auto lits = literals_of(conj);
        if (name == "dnf") {
            lines.push_back(render(conj));
        } else if (name == "unify") {
            Unified u = unify_coefficient(lits, x);
            lines.push_back(x + " := " + u.factor.str() + "*" + x + ": " + render(make_and(u.lits)));
        } else if (name == "merge-congruences") {
            std::vector<Formula> divs, rest;
            for (const auto& l : lits) {
                const Formula& a = l.kind() == Kind::Not ? l.child() : l;
                bool div = a.is_atom() && a.atom().kind == AtomKind::Div && a.atom().mentions(x);
                (div ? divs : rest).push_back(l);
            }
            if (!divs.empty()) rest.push_back(merge_congruences(divs, x, o.residue_cap));
            lines.push_back(render(make_and(rest)));
        } else if (name == "split-prime-part") {
            std::vector<Formula> out;
            for (const auto& l : lits) {
                if (!l.is_atom() || l.atom().kind != AtomKind::Div || !l.atom().mentions(x)) {
                    out.push_back(l);
                    continue;
                }
                Formula cur = l;
                for (const auto& p : primes.primes()) {
                    std::vector<Formula> next;
                    for (const auto& part : literals_of(cur))
                        next.push_back(part.is_atom() && part.atom().kind == AtomKind::Div
                                           ? split_prime_part(part.atom(), x, p)
                                           : part);
                    cur = make_and(next);
                }
                out.push_back(cur);
            }
            lines.push_back(render(make_and(out)));
        } else if (name == "reduce-bounds") {
            lines.push_back(render(reduce_bounds(lits, x)));
        } else if (name == "normal-form") {
            for (const auto& g : normalize_conjunct(lits, x)) {
                std::string rhs = g.form ? x + " := " + g.form->factor.str() + "*" + x + ": " +
                                               render(g.form->to_formula(x))
                                         : "eliminated: " + render(g.resolved);
                lines.push_back("[" + render(g.guard) + "] " + rhs);
            }
        } else {
            throw DomainError("unknown pass '" + name +
                              "' (nnf, dnf, one-sided, unify, merge-congruences, split-prime-part, reduce-bounds, "
                              "normal-form)");
        }
    }
    return lines;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const Options& o, const std::string& input, const std::string& output, const std::string& status,
          double ms) {
    if (o.json) {
        json j{{"input", input}, {"output", output}, {"status", status}, {"timings", {{"total_ms", ms}}}};
        std::cout << j.dump() << "\n";
    } else if (!output.empty()) {
        std::cout << output << "\n";
    }
}

int run(const std::string& cmd, const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    std::string text;
    try {
        PrimeSet primes = PrimeSet::parse(o.primes);
        if (cmd == "check") {
            if (o.trials < 1) throw DomainError("--trials must be at least 1");
            FuzzConfig cfg;
            cfg.primes = primes;
            cfg.trials = o.trials;
            cfg.seed = o.seed;
            cfg.max_coeff = o.max_coeff;
            cfg.max_depth = o.max_depth;
            cfg.qe = qe_config(o);
            FuzzReport rep = fuzz_check(cfg);
            if (o.json) {
                for (const auto& t : rep.trials) {
                    json j{{"input", t.input},
                           {"output", t.output},
                           {"status", to_string(t.status)},
                           {"timings", {{"total_ms", t.millis}}}};
                    if (!t.detail.empty()) j["detail"] = t.detail;
                    std::cout << j.dump() << "\n";
                }
            } else {
                std::cout << rep.summary();
            }
            if (rep.count(TrialStatus::Mismatch) || rep.count(TrialStatus::Error)) return kDisagree;
            return rep.count(TrialStatus::Resource) ? kResource : kOk;
        }

        text = read_formula(o.formula);
        Formula f = parse(text, primes);
        QeConfig cfg = qe_config(o);
        if (cmd == "qe") {
            emit(o, text, render(eliminate_quantifiers(f, cfg)), "ok", ms_since(t0));
        } else if (cmd == "decide") {
            emit(o, text, decide_sentence(f, cfg) ? "true" : "false", "ok", ms_since(t0));
        } else if (cmd == "solve") {
            auto fv = free_vars(f);
            std::string x = o.var.empty() ? (fv.empty() ? std::string("x") : *fv.begin()) : o.var;
            SolveResult r = solve_grounded_1v(f, x, cfg);
            std::string out;
            if (r.result.sat) {
                out = "sat " + x + " = " + r.result.witness.str();
                if (!o.json) {
                    const auto& c = r.certificate;
                    if (!c.per_prime.empty()) {
                        out += "\n  " + (c.factor == 1 ? x : c.factor.str() + "*" + x) + " = " + c.residue.str() +
                               " mod " + c.modulus.str() + " from";
                        for (const auto& [p, b] : c.per_prime) out += " p=" + p.str() + ":" + b.to_string();
                    } else if (!c.note.empty()) {
                        out += "\n  " + c.note;
                    }
                }
            } else {
                out = "unsat";
            }
            emit(o, text, out, "ok", ms_since(t0));
        } else if (cmd == "pass-debug") {
            if (o.pass.empty()) throw DomainError("pass-debug needs --pass <name>");
            std::string out;
            for (const auto& l : run_pass(o.pass, f, primes, o)) out += (out.empty() ? "" : "\n") + l;
            emit(o, text, out, "ok", ms_since(t0));
        }
        return kOk;
    } catch (const ResourceError& e) {
        if (o.json) emit(o, text, "", std::string("resource: ") + e.what(), ms_since(t0));
        std::cerr << "padiq: resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const Error& e) {
        if (o.json) emit(o, text, "", std::string("error: ") + e.what(), ms_since(t0));
        std::cerr << "padiq: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantifier elimination for (Z, +, 0, |_p) with p-adic valuation atoms"};
    app.require_subcommand(1);
    Options o;
    struct Cmd {
        const char* name;
        const char* help;
        bool formula;
    };
    const Cmd cmds[] = {
        {"qe", "eliminate quantifiers and print the result", true},
        {"decide", "decide a sentence (prints true or false)", true},
        {"solve", "find an integer witness for a one-variable formula", true},
        {"check", "differential test of QE against the brute-force oracle", false},
        {"pass-debug", "print the output of one normalisation pass", true},
    };
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--primes", o.primes, "comma-separated prime set")->capture_default_str();
        sub->add_option("--node-cap", o.node_cap, "DNF literal cap")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--residue-cap", o.residue_cap, "congruence residue cap")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        sub->add_flag("--json", o.json, "one JSON object per result");
        if (c.formula) sub->add_option("formula", o.formula, "formula text, or - for stdin")->required();
        if (std::string(c.name) == "check") {
            sub->add_option("--trials", o.trials, "number of random formulas")->capture_default_str();
            sub->add_option("--seed", o.seed, "generator seed")->capture_default_str();
            sub->add_option("--max-coeff", o.max_coeff, "largest coefficient")
                ->capture_default_str()
                ->check(CLI::PositiveNumber);
            sub->add_option("--max-depth", o.max_depth, "largest formula depth")
                ->capture_default_str()
                ->check(CLI::PositiveNumber);
        }
        if (std::string(c.name) == "pass-debug") sub->add_option("--pass", o.pass, "pass name");
        if (std::string(c.name) == "solve" || std::string(c.name) == "pass-debug")
            sub->add_option("--var", o.var, "variable to solve for / normalise in");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    return run(app.get_subcommands().front()->get_name(), o);
}
