#include "qgroup/cli.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qgroup;

namespace {

int vertex(const Session& s, int one_based) {
    if (one_based < 1 || static_cast<size_t>(one_based) > s.datum().rank())
        throw py::index_error("vertex " + std::to_string(one_based) + " out of range");
    return one_based - 1;
}

Session make_session(const std::string& quiver, int q, std::optional<uint64_t> budget) {
    SessionOptions o;
    o.q = q;
    if (budget) o.budget = *budget;
    return Session::load(quiver, o);
}

}  // namespace

PYBIND11_MODULE(_qgroup, m) {
    m.doc() = "Exact computations with quantum groups, Lusztig symmetries and Hall algebras";

    auto parse_error = py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    (void)parse_error;

    m.attr("SCHEMA") = kSchema;
    m.def("scalar", [](const std::string& s) { return parse_scalar(s).to_string(); }, "Canonical form of a rational function in v");

    py::class_<Session>(m, "Session")
        .def(py::init(&make_session), py::arg("quiver") = "1->2", py::arg("q") = 4, py::arg("budget") = py::none())
        .def_property_readonly("rank", [](const Session& s) { return s.datum().rank(); })
        .def_property_readonly("cartan", [](const Session& s) {
            std::vector<std::vector<int>> a(s.datum().rank(), std::vector<int>(s.datum().rank()));
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t j = 0; j < a.size(); ++j) a[i][j] = s.datum().a(i, j);
            return a;
        })
        .def("f_basis", [](const Session& s, const std::string& nu) {
            std::vector<std::string> out;
            const auto wb = s.f()->weight_basis(DimVec::parse(nu));
            for (size_t k = 0; k < wb->dim(); ++k) out.push_back(wb->basis_word(k).to_string("th"));
            return out;
        })
        .def("f_nf", [](const Session& s, const std::string& e) { return to_string(parse_f(*s.f(), e), "th"); })
        .def("f_json", [](const Session& s, const std::string& e) { return export_json(to_json(parse_f(*s.f(), e))); })
        .def("u_nf", [](const Session& s, const std::string& e) { return s.u()->to_string(parse_u(*s.u(), e)); })
        .def("u_json", [](const Session& s, const std::string& e) { return export_json(to_json(parse_u(*s.u(), e))); })
        .def("u_mul", [](const Session& s, const std::string& a, const std::string& b) {
            return s.u()->to_string(s.u()->mul(parse_u(*s.u(), a), parse_u(*s.u(), b)));
        })
        .def("u_delta", [](const Session& s, const std::string& e) { return s.u()->to_string(s.u()->delta(parse_u(*s.u(), e))); })
        .def("u_antipode", [](const Session& s, const std::string& e) { return s.u()->to_string(s.u()->antipode(parse_u(*s.u(), e))); })
        .def("hopf_check", [](const Session& s, const std::string& e) { return s.u()->hopf_axiom_check(parse_u(*s.u(), e)).ok(); })
        .def("ti_apply", [](const Session& s, int i, const std::string& e) {
            return s.u()->to_string(s.braid()->ti_apply(vertex(s, i), parse_u(*s.u(), e)));
        })
        .def("ti_inverse", [](const Session& s, int i, const std::string& e) {
            return s.u()->to_string(s.braid()->ti_inverse_apply(vertex(s, i), parse_u(*s.u(), e)));
        })
        .def("braid_verify", [](const Session& s, int i, int j) { return s.braid()->braid_verify(vertex(s, i), vertex(s, j)); })
        .def("double_mul", [](const Session& s, const std::string& a, const std::string& b) {
            const auto& D = *s.dbl();
            return D.to_string(D.double_mul(parse_double(D, a), parse_double(D, b)));
        })
        .def("verify_json", [](const Session& s, const std::string& suite) {
            py::gil_scoped_release release;
            return export_json(s.run_suite(suite).to_json());
        });

    m.def(
        "hall_classes",
        [](const std::string& quiver, const std::string& dim, int q) {
            HallOracle h(Quiver::parse_shorthand(quiver), q);
            std::vector<std::pair<std::string, uint64_t>> out;
            for (const auto& c : h.iso_classes(DimVec::parse(dim))) out.emplace_back(h.class_name(c.cls), c.orbit_size);
            return out;
        },
        py::arg("quiver"), py::arg("dim"), py::arg("q"));
    m.def(
        "hall_strata",
        [](const std::string& quiver, const std::string& dim, int q, int i) {
            HallOracle h(Quiver::parse_shorthand(quiver), q);
            if (i < 1 || static_cast<size_t>(i) > h.quiver().size()) throw py::index_error("vertex out of range");
            return h.stratum_counts(DimVec::parse(dim), i - 1);
        },
        py::arg("quiver"), py::arg("dim"), py::arg("q"), py::arg("i"));
    m.def(
        "hall_compare",
        [](const std::string& quiver, const std::string& a, const std::string& b, int q) {
            HallOracle h(Quiver::parse_shorthand(quiver), q);
            FAlgebra f(CartanDatum::load(h.quiver()));
            const CompareReport r = specialize_compare(h, f, DimVec::parse(a), DimVec::parse(b));
            return std::make_pair(r.entries.size(), r.mismatches);
        },
        py::arg("quiver"), py::arg("a"), py::arg("b"), py::arg("q") = 4);
}
