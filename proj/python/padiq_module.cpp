// Python bindings for the padiq core.

#include "padiq/error.hpp"
#include "padiq/formula.hpp"
#include "padiq/fuzz.hpp"
#include "padiq/oracle.hpp"
#include "padiq/qe.hpp"
#include "padiq/syntax.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace padiq;

namespace {

py::int_ to_py(const Int& v) { return py::int_(py::str(v.str())); }

Int from_py(const py::int_& v) { return Int(py::str(py::handle(v)).cast<std::string>()); }

PrimeSet primes_of(const std::vector<py::int_>& ps) {
    std::vector<Int> out;
    for (const auto& p : ps) out.push_back(from_py(p));
    return PrimeSet(out);
}

QeConfig config(std::size_t node_cap, std::size_t residue_cap) { return {node_cap, residue_cap}; }

Assignment assignment_of(const py::dict& d) {
    Assignment a;
    for (const auto& [k, v] : d) a[k.cast<std::string>()] = from_py(v.cast<py::int_>());
    return a;
}

py::dict ball_dict(const Ball& b) {
    py::dict d;
    d["center"] = to_py(b.center());
    d["radius"] = b.radius().is_infinite() ? py::object(py::none()) : py::object(py::int_(b.radius().value()));
    return d;
}

}  // namespace

PYBIND11_MODULE(_padiq, m) {
    m.doc() = "Quantifier elimination for the integers with p-adic valuations";

    static py::exception<ResourceError> resource_error(m, "ResourceError", PyExc_RuntimeError);
    static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr e) {
        try {
            if (e) std::rethrow_exception(e);
        } catch (const ResourceError& x) {
            resource_error(x.what());
        } catch (const ParseError& x) {
            parse_error(x.what());
        } catch (const DomainError& x) {
            PyErr_SetString(PyExc_ValueError, x.what());
        }
    });

    py::class_<Formula>(m, "Formula")
        .def("__str__", [](const Formula& f) { return render(f); })
        .def("__repr__", [](const Formula& f) { return "Formula(" + render(f) + ")"; })
        .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
        .def("__hash__", [](const Formula& f) { return std::hash<std::string>{}(render(f)); })
        .def_property_readonly("free_vars", [](const Formula& f) { return free_vars(f); })
        .def_property_readonly("quantifier_free", [](const Formula& f) { return is_quantifier_free(f); })
        .def_property_readonly("is_true", &Formula::is_true)
        .def_property_readonly("is_false", &Formula::is_false);

    m.def(
        "parse", [](const std::string& text, const std::vector<py::int_>& primes) { return parse(text, primes_of(primes)); },
        py::arg("text"), py::arg("primes") = std::vector<py::int_>{py::int_(2), py::int_(3)},
        "Parse formula text over the given prime set.");
    m.def("render", [](const Formula& f) { return render(f); }, py::arg("formula"));
    m.def(
        "evaluate", [](const Formula& f, const py::dict& values) { return eval_qf(f, assignment_of(values)); },
        py::arg("formula"), py::arg("values") = py::dict(), "Truth of a quantifier-free formula.");
    m.def(
        "qe",
        [](const Formula& f, std::size_t node_cap, std::size_t residue_cap) {
            return eliminate_quantifiers(f, config(node_cap, residue_cap));
        },
        py::arg("formula"), py::arg("node_cap") = 100000, py::arg("residue_cap") = 360,
        "Equivalent quantifier-free formula.");
    m.def(
        "decide",
        [](const Formula& f, std::size_t node_cap, std::size_t residue_cap) {
            return decide_sentence(f, config(node_cap, residue_cap));
        },
        py::arg("sentence"), py::arg("node_cap") = 100000, py::arg("residue_cap") = 360);
    m.def(
        "solve",
        [](const Formula& f, const std::string& var) {
            SolveResult r = solve_grounded_1v(f, var);
            py::dict d;
            d["sat"] = r.result.sat;
            d["witness"] = r.result.sat ? py::object(to_py(r.result.witness)) : py::object(py::none());
            d["modulus"] = to_py(r.certificate.modulus);
            d["residue"] = to_py(r.certificate.residue);
            d["factor"] = to_py(r.certificate.factor);
            py::dict balls;
            for (const auto& [p, b] : r.certificate.per_prime) balls[to_py(p)] = ball_dict(b);
            d["per_prime"] = balls;
            d["note"] = r.certificate.note;
            return d;
        },
        py::arg("formula"), py::arg("var") = "x", "Witness for a formula whose only free variable is var.");
    m.def(
        "recognize_subgroup",
        [](const Formula& f, const std::string& var, const std::vector<py::int_>& primes) -> py::object {
            auto s = recognize_subgroup(f, var, primes_of(primes));
            if (!s) return py::none();
            py::dict d;
            d["trivial"] = s->trivial;
            d["generator"] = to_py(s->generator);
            d["cofactor"] = to_py(s->cofactor);
            py::dict g;
            for (const auto& [p, e] : s->gamma) g[to_py(p)] = e;
            d["gamma"] = g;
            d["text"] = s->to_string();
            return d;
        },
        py::arg("formula"), py::arg("var") = "x", py::arg("primes") = std::vector<py::int_>{py::int_(2), py::int_(3)});
    m.def(
        "fuzz_check",
        [](const std::vector<py::int_>& primes, std::size_t trials, std::uint64_t seed, int max_coeff, int max_depth) {
            if (trials < 1) throw DomainError("trials must be at least 1");
            FuzzConfig cfg;
            cfg.primes = primes_of(primes);
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.max_coeff = max_coeff;
            cfg.max_depth = max_depth;
            FuzzReport rep;
            {
                py::gil_scoped_release release;
                rep = fuzz_check(cfg);
            }
            py::list rows;
            for (const auto& t : rep.trials) {
                py::dict row;
                row["input"] = t.input;
                row["output"] = t.output;
                row["status"] = to_string(t.status);
                row["detail"] = t.detail;
                row["checks"] = t.checks;
                rows.append(row);
            }
            py::dict d;
            d["trials"] = rows;
            d["agree"] = rep.count(TrialStatus::Agree);
            d["summary"] = rep.summary();
            return d;
        },
        py::arg("primes") = std::vector<py::int_>{py::int_(2), py::int_(3)}, py::arg("trials") = 100,
        py::arg("seed") = 1, py::arg("max_coeff") = 6, py::arg("max_depth") = 5,
        "Differential test of elimination against the brute-force oracle.");
}
