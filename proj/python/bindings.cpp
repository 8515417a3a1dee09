#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nilfourier/errors.hpp"
#include "nilfourier/forms.hpp"
#include "nilfourier/grid.hpp"
#include "nilfourier/ideals.hpp"
#include "nilfourier/katai.hpp"
#include "nilfourier/kernels.hpp"
#include "nilfourier/multfn.hpp"
#include "nilfourier/nilseq.hpp"
#include "nilfourier/numfield.hpp"
#include "nilfourier/partreg.hpp"
#include "nilfourier/units.hpp"

namespace py = pybind11;
using namespace nilfourier;

namespace {

struct PyField {
    FieldPtr p;
};

Rat rat_from_py(const py::handle& h) {
    std::string s = py::cast<std::string>(py::str(h));
    auto slash = s.find('/');
    if (s.empty()) throw precondition_error("empty rational literal");
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash))) / Rat(Int(s.substr(slash + 1)));
}

py::object rat_to_py(const Rat& r) {
    py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(py::int_(py::str(num(r).str())), py::int_(py::str(den(r).str())));
}

FieldElement make_element(const PyField& f, const py::sequence& coords) {
    std::vector<Rat> c;
    for (const auto& h : coords) c.push_back(rat_from_py(h));
    if (c.size() != f.p->D) throw precondition_error("coordinate count must equal the degree");
    return FieldElement(f.p, std::move(c));
}

py::list coords_out(const FieldElement& x) {
    py::list l;
    for (const auto& c : x.coords) l.append(rat_to_py(c));
    return l;
}

std::map<MIdx, std::vector<Rat>> rat_coeffs(const py::dict& d) {
    std::map<MIdx, std::vector<Rat>> out;
    for (const auto& [k, v] : d) {
        MIdx j;
        for (const auto& e : py::cast<py::sequence>(k)) j.push_back(py::cast<unsigned>(e));
        std::vector<Rat> vals;
        for (const auto& e : py::cast<py::sequence>(v)) vals.push_back(rat_from_py(e));
        out[std::move(j)] = std::move(vals);
    }
    return out;
}

py::dict coeffs_out(const std::map<MIdx, std::vector<Rat>>& m) {
    py::dict d;
    for (const auto& [j, vals] : m) {
        py::tuple key(j.size());
        for (std::size_t i = 0; i < j.size(); ++i) key[i] = j[i];
        py::list l;
        for (const auto& r : vals) l.append(rat_to_py(r));
        d[key] = l;
    }
    return d;
}

MultFnSpec multfn_by_name(const std::string& name, const FieldPtr& f) {
    if (name == "mobiusK" || name == "mobius") return MultFnSpec::make(MultKind::mobiusK, f);
    if (name == "liouvilleK" || name == "liouville")
        return MultFnSpec::make(MultKind::liouvilleK, f);
    if (name == "one") return MultFnSpec::make(MultKind::constant_one, f);
    throw precondition_error("unknown function name: " + name);
}

py::dict spec_dict(const KTypeSpec& spec) {
    py::dict out;
    out["label"] = spec.label;
    out["field"] = spec.K->label;
    out["case"] = spec.case_id;
    py::list sa, sap;
    for (const auto& x : spec.a) sa.append(x.str());
    for (const auto& x : spec.ap) sap.append(x.str());
    out["a"] = sa;
    out["ap"] = sap;
    return out;
}

} // namespace

PYBIND11_MODULE(_nilfourier, mod) {
    mod.doc() = "exact number-field arithmetic with higher-order Fourier statistics";

    py::register_exception<precondition_error>(mod, "PreconditionError", PyExc_ValueError);
    py::register_exception<unsupported_error>(mod, "UnsupportedError", PyExc_NotImplementedError);
    py::register_exception<numeric_error>(mod, "NumericError", PyExc_ArithmeticError);

    py::class_<PyField>(mod, "Field")
        .def_static("builtin",
                    [](const std::string& name) { return PyField{FieldSpec::builtin(name)}; })
        .def_static("builtin_names", [] { return FieldSpec::builtin_names(); })
        .def_static("parse", [](const std::string& text) { return PyField{FieldSpec::parse(text)}; })
        .def_property_readonly("label", [](const PyField& f) { return f.p->label; })
        .def_property_readonly("degree", [](const PyField& f) { return f.p->D; })
        .def_property_readonly("monogenic", [](const PyField& f) { return f.p->is_monogenic(); })
        .def_property_readonly("unit_rank", [](const PyField& f) { return unit_rank(*f.p); })
        .def("element", &make_element)
        .def("one", [](const PyField& f) { return FieldElement::one(f.p); })
        .def("zero", [](const PyField& f) { return FieldElement::zero(f.p); })
        .def("__repr__", [](const PyField& f) {
            return "<Field " + f.p->label + " degree " + std::to_string(f.p->D) + ">";
        });

    py::class_<FieldElement>(mod, "Element")
        .def(py::init(&make_element))
        .def_property_readonly("field", [](const FieldElement& x) { return PyField{x.field}; })
        .def_property_readonly("coords", &coords_out)
        .def("is_zero", &FieldElement::is_zero)
        .def("is_integral", &FieldElement::is_integral)
        .def("__add__", [](const FieldElement& a, const FieldElement& b) { return a + b; })
        .def("__sub__", [](const FieldElement& a, const FieldElement& b) { return a - b; })
        .def("__neg__", [](const FieldElement& a) { return -a; })
        .def("__mul__", [](const FieldElement& a, const FieldElement& b) { return a * b; })
        .def("__pow__", [](const FieldElement& a, unsigned e) { return a.pow(e); })
        .def("__eq__", [](const FieldElement& a, const FieldElement& b) { return a == b; })
        .def("inverse", &FieldElement::inverse)
        .def("norm", [](const FieldElement& x) { return rat_to_py(knorm(x)); })
        .def("min_poly",
             [](const FieldElement& x) {
                 py::list l;
                 Poly p = min_poly(x);
                 for (const auto& c : p.c) l.append(rat_to_py(c));
                 return l;
             })
        .def("__repr__", &FieldElement::str);

    mod.def("mobius", &mobius_K, py::arg("n"));
    mod.def(
        "primes_above",
        [](const PyField& f, long p) {
            py::list out;
            for (const auto& pf : primes_above(f.p, Int(p))) {
                py::dict d;
                d["norm"] = pf.ideal.norm.str();
                d["e"] = pf.e;
                d["f"] = pf.f;
                out.append(d);
            }
            return out;
        },
        py::arg("field"), py::arg("p"));
    mod.def(
        "density_estimate",
        [](const FieldElement& gen, long N) {
            return rat_to_py(density_estimate(IdealLattice::principal(gen), N));
        },
        py::arg("generator"), py::arg("N"));

    mod.def(
        "gowers_norm",
        [](const std::vector<cplx>& values, std::size_t D, long modn, unsigned d) {
            GridFn f(D, modn);
            if (values.size() != f.size()) throw precondition_error("value count != mod^D");
            f.values = values;
            return gowers_norm(f, d);
        },
        py::arg("values"), py::arg("D"), py::arg("mod"), py::arg("d"));
    mod.def("gowers_interval_norm", &gowers_interval_norm, py::arg("values"), py::arg("D"),
            py::arg("N"), py::arg("d"), py::arg("Nstar"));

    mod.def(
        "aperiodicity_stat",
        [](const PyField& f, const std::string& fn, long N) {
            MultFnSpec chi = multfn_by_name(fn, f.p);
            return aperiodicity_stat(chi, N, default_catalog(f.p->D, N));
        },
        py::arg("field"), py::arg("fn"), py::arg("N"));

    mod.def(
        "structure_report",
        [](const PyField& f, const std::string& fn, long N, long m, long Q, unsigned d) {
            MultFnSpec chi = multfn_by_name(fn, f.p);
            long Ntilde = choose_modulus(N, 3);
            GridFn chiN = truncate(chi, N, Ntilde);
            StructureReport r = structure_report(chiN, {Ntilde, m, Q, f.p->D}, Q, d);
            py::dict out;
            out["Ntilde"] = Ntilde;
            out["max_shift_diff"] = r.max_shift_diff;
            out["fourier_shift_bound"] = r.fourier_shift_bound;
            out["max_rational_dist"] = r.max_rational_dist;
            out["structured_norm"] = r.structured_norm;
            out["uniform_norm"] = r.uniform_norm;
            return out;
        },
        py::arg("field"), py::arg("fn"), py::arg("N"), py::arg("m"), py::arg("Q"),
        py::arg("d") = 2);

    mod.def(
        "regularize",
        [](const FieldElement& a, long height) {
            UnitSystem sys = find_units(a.field, height);
            RegularizeResult r = regularize(a, sys);
            py::dict out;
            out["unit"] = coords_out(r.unit);
            out["regularized"] = coords_out(r.regularized);
            out["achieved_C"] = r.achieved_C;
            return out;
        },
        py::arg("a"), py::arg("height") = 60);
    mod.def("regularity_check", &regularity_check, py::arg("a"), py::arg("C"), py::arg("N"));

    mod.def(
        "tk_statistic",
        [](const PyField& f, unsigned count, long height, long N) {
            PrimeSet P = build_prime_set(f.p, count, height);
            TkResult r = tk_statistic(P, N);
            py::dict out;
            out["lhs"] = r.lhs;
            out["rhs_scale"] = r.rhs_scale;
            out["ratio"] = r.ratio;
            out["A_P"] = rat_to_py(P.A_P);
            return out;
        },
        py::arg("field"), py::arg("count"), py::arg("height"), py::arg("N"));

    mod.def(
        "char_search",
        [](std::size_t D, std::size_t s, const std::map<MIdx, std::vector<double>>& coeffs,
           long N, long C) {
            PolySeq g = PolySeq::from_monomial(D, s, coeffs);
            auto [best, norm] = char_search(g, N, C);
            return py::make_tuple(best.l, norm);
        },
        py::arg("D"), py::arg("s"), py::arg("monomial_coeffs"), py::arg("N"), py::arg("C"));

    mod.def(
        "smooth_norm",
        [](std::size_t D, std::size_t s, const std::map<MIdx, std::vector<double>>& coeffs,
           long N, const std::string& flavor) {
            bool binom = flavor == "binomial";
            PolySeq g = binom ? PolySeq::from_binomial(D, s, coeffs)
                              : PolySeq::from_monomial(D, s, coeffs);
            return smooth_norm(g, N, binom ? CoeffFlavor::binomial : CoeffFlavor::monomial);
        },
        py::arg("D"), py::arg("s"), py::arg("coeffs"), py::arg("N"),
        py::arg("flavor") = "monomial");

    mod.def(
        "hat",
        [](std::size_t D, std::size_t m, std::size_t s, const py::dict& coeffs) {
            SymForm L{D, m, s, rat_coeffs(coeffs)};
            L.validate();
            return coeffs_out(hat(L).v);
        },
        py::arg("D"), py::arg("m"), py::arg("s"), py::arg("coeffs"));
    mod.def(
        "check",
        [](std::size_t D, std::size_t m, std::size_t s, const py::dict& coeffs) {
            DiagForm R{D, m, s, rat_coeffs(coeffs)};
            R.validate();
            return coeffs_out(check(R).u);
        },
        py::arg("D"), py::arg("m"), py::arg("s"), py::arg("coeffs"));

    mod.def(
        "folner_set",
        [](const PyField& f, unsigned N) {
            py::list out;
            for (const auto& x : folner_set(f.p, N)) out.append(coords_out(x));
            return out;
        },
        py::arg("field"), py::arg("N"));

    mod.def(
        "mult_average",
        [](const PyField& f, const std::string& fn, const std::vector<FieldElement>& a,
           const std::vector<FieldElement>& ap, long N) {
            MultFnSpec chi = multfn_by_name(fn, f.p);
            MultAverage r = mult_average(chi, a, ap, N);
            return py::make_tuple(r.value, r.degenerate_fraction);
        },
        py::arg("field"), py::arg("fn"), py::arg("a"), py::arg("ap"), py::arg("N"));

    mod.def(
        "quad_parametrization",
        [](long a, long b, long c, long d, long e, long f) {
            return spec_dict(quad_parametrization(a, b, c, d, e, f));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d") = 0, py::arg("e") = 0,
        py::arg("f") = 0);
    mod.def(
        "verify_quad",
        [](long a, long b, long c, long d, long e, long f, unsigned trials, unsigned seed) {
            VerifyReport r = verify_identity(quad_parametrization(a, b, c, d, e, f), trials, seed);
            return py::make_tuple(r.trials, r.evaluations);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d") = 0, py::arg("e") = 0,
        py::arg("f") = 0, py::arg("trials") = 100, py::arg("seed") = 1);
    mod.def(
        "verify_gerardin",
        [](unsigned trials, unsigned seed) {
            VerifyReport r = verify_identity(gerardin_spec(), trials, seed);
            return py::make_tuple(r.trials, r.evaluations);
        },
        py::arg("trials") = 100, py::arg("seed") = 1);
    mod.def("gerardin_spec", [] { return spec_dict(gerardin_spec()); });
}
