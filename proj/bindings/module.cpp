#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "liederiv/classifier.hpp"
#include "liederiv/errors.hpp"
#include "liederiv/parse.hpp"
#include "liederiv/triangular.hpp"

namespace py = pybind11;
using namespace liederiv;

PYBIND11_MODULE(_liederiv, m) {
    m.doc() = "exact-arithmetic Lie algebras of polynomial vector fields";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_ValueError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

    py::class_<RationalFunction>(m, "RationalFunction")
        .def(py::init([](const std::string& text, int num_vars) {
                 return parse_rational_function(text, num_vars);
             }),
             py::arg("text"), py::arg("num_vars") = 0)
        .def_property_readonly("num_vars", &RationalFunction::num_vars)
        .def("is_zero", &RationalFunction::is_zero)
        .def("is_polynomial", &RationalFunction::is_polynomial)
        .def("is_constant", &RationalFunction::is_constant)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def("__str__", &RationalFunction::str)
        .def("__repr__",
             [](const RationalFunction& f) { return "RationalFunction('" + f.str() + "')"; });

    py::class_<Derivation>(m, "Derivation")
        .def(py::init([](const std::string& text, int num_vars) {
                 return parse_derivation(text, num_vars);
             }),
             py::arg("text"), py::arg("num_vars") = 0)
        .def_property_readonly("num_vars", &Derivation::num_vars)
        .def("is_zero", &Derivation::is_zero)
        .def("coeff", &Derivation::coeff, py::arg("index"),
             "coefficient of d/dx_index (1-based)")
        .def("apply", py::overload_cast<const RationalFunction&>(&Derivation::apply, py::const_),
             py::arg("f"))
        .def("apply",
             [](const Derivation& d, const std::string& f) {
                 return d.apply(parse_rational_function(f, d.num_vars()));
             },
             py::arg("f"))
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def("__str__", &Derivation::str)
        .def("__repr__", [](const Derivation& d) { return "Derivation('" + d.str() + "')"; });

    m.def("bracket", &bracket, py::arg("d1"), py::arg("d2"), "Lie bracket [d1, d2]");
    m.def(
        "parse_derivations",
        [](const std::string& text, int num_vars) {
            return parse_derivation_list(text, num_vars);
        },
        py::arg("text"), py::arg("num_vars") = 0,
        "parse a semicolon-separated derivation list");

    py::class_<LieAlgebra>(m, "LieAlgebra")
        .def_static("close_under_bracket", &LieAlgebra::close_under_bracket,
                    py::arg("generators"), py::arg("max_dim") = kDefaultMaxDim)
        .def_static(
            "from_text",
            [](const std::string& text, int num_vars, int max_dim) {
                return LieAlgebra::close_under_bracket(parse_derivation_list(text, num_vars),
                                                       max_dim);
            },
            py::arg("text"), py::arg("num_vars") = 0, py::arg("max_dim") = kDefaultMaxDim)
        .def_property_readonly("num_vars", &LieAlgebra::num_vars)
        .def_property_readonly("dim", &LieAlgebra::dim)
        .def_property_readonly("basis", &LieAlgebra::basis)
        .def("is_abelian", &LieAlgebra::is_abelian)
        .def("__repr__", [](const LieAlgebra& a) {
            return "LieAlgebra(dim=" + std::to_string(a.dim()) + ")";
        });

    m.def(
        "rank_over_r", [](const LieAlgebra& alg) { return rank_over_R(alg); },
        py::arg("algebra"));
    m.def(
        "nilpotency",
        [](const LieAlgebra& alg) {
            const auto info = is_nilpotent(alg);
            return py::make_tuple(info.nilpotent, info.nilpotency_class);
        },
        py::arg("algebra"), "returns (nilpotent, class)");
    m.def(
        "center_report",
        [](const LieAlgebra& alg) {
            const CenterInfo z = center(alg);
            py::dict d;
            py::list basis;
            for (const auto& b : z.basis) basis.append(b.str());
            d["basis"] = basis;
            d["rank_over_R"] = z.rank_over_R;
            d["corank"] = z.corank;
            return d;
        },
        py::arg("algebra"));
    m.def("is_constant", &is_constant, py::arg("f"), py::arg("algebra"));
    m.def("structure_report_json", &structure_report_json, py::arg("algebra"));

    m.def("is_member_un", &is_member_un, py::arg("derivation"));
    m.def(
        "non_nilpotency_witness",
        [](int n, int length) {
            const auto w = non_nilpotency_witness(n, length);
            py::list chain;
            for (const auto& c : w.chain) chain.append(c.str());
            return py::make_tuple(chain, w.final_element.str());
        },
        py::arg("n"), py::arg("length"));
    m.def("fg_subalgebra_class", &local_nilpotency_of_fg_subalgebras, py::arg("sample"),
          py::arg("max_dim") = kDefaultMaxDim);
    m.def(
        "find_slice",
        [](const Derivation& d, const std::vector<std::string>& generators, int cap) {
            std::vector<RationalFunction> gens;
            for (const auto& g : generators)
                gens.push_back(parse_rational_function(g, d.num_vars()));
            const auto s = find_slice(d, gens, cap);
            return py::make_tuple(s.preslice.str(), s.slice.str());
        },
        py::arg("derivation"), py::arg("generators"), py::arg("cap") = kDefaultIterationCap,
        "returns (preslice, slice) with D(slice) = 1");

    m.def("build_l1", &build_L1, py::arg("n"), py::arg("k"));
    m.def("build_l2", &build_L2, py::arg("n"), py::arg("k"));
    m.def("random_nilpotent", &random_nilpotent, py::arg("n"), py::arg("seed"),
          py::arg("size"));
    m.def(
        "classify_json",
        [](const LieAlgebra& alg) { return verdict_report_json(classify(alg)); },
        py::arg("algebra"));
    m.def(
        "embed_json",
        [](const LieAlgebra& alg) {
            const auto v = classify(alg);
            const auto e = embed(v, alg);
            return embedding_report_json(v, e);
        },
        py::arg("algebra"));
}
