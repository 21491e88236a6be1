#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weyl_scope/detect.hpp"
#include "weyl_scope/firstorder.hpp"
#include "weyl_scope/friedrichs.hpp"
#include "weyl_scope/hainlust.hpp"
#include "weyl_scope/io.hpp"
#include "weyl_scope/run.hpp"
#include "weyl_scope/triple.hpp"

namespace py = pybind11;
using namespace weyl;

namespace {

HLModel hl_from(const std::string& text) { return hl_model_from_json(Json::parse(text)); }
FriedrichsModel fr_from(const std::string& text) { return fr_model_from_json(Json::parse(text)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Numerical laboratory for abstract Titchmarsh-Weyl M-functions.";

    static py::exception<Error> error(m, "WeylError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    py::class_<FiniteTriple, std::shared_ptr<FiniteTriple>>(m, "FiniteTriple")
        .def_property_readonly("T", [](const FiniteTriple& t) { return t.T; })
        .def_property_readonly("Ttilde", [](const FiniteTriple& t) { return t.Ttilde; })
        .def_property_readonly("E", [](const FiniteTriple& t) { return t.E; })
        .def_property_readonly("G1", [](const FiniteTriple& t) { return t.G1; })
        .def_property_readonly("G2", [](const FiniteTriple& t) { return t.G2; })
        .def_property_readonly("Gt1", [](const FiniteTriple& t) { return t.Gt1; })
        .def_property_readonly("Gt2", [](const FiniteTriple& t) { return t.Gt2; })
        .def_readonly("id", &FiniteTriple::id)
        .def("green_defect", &FiniteTriple::green_defect)
        .def("to_json", [](const FiniteTriple& t) { return triple_to_json(t).dump(); });

    // Triples are immutable; the casts only satisfy the holder type.
    auto hold = [](const TriplePtr& t) { return std::const_pointer_cast<FiniteTriple>(t); };
    m.def("random_triple", [hold](Eigen::Index m, Eigen::Index h, std::uint64_t seed) {
        return hold(random_triple(m, h, seed));
    }, py::arg("m"), py::arg("h"), py::arg("seed"));
    m.def("make_triple", [hold](const CMatrix& t, const CMatrix& e, const CMatrix& g1, const CMatrix& g2,
                                const CMatrix& gt1, const CMatrix& gt2) {
        return hold(make_triple(t, e, g1, g2, gt1, gt2));
    });
    m.def("triple_from_json", [hold](const std::string& text) { return hold(triple_from_json(Json::parse(text))); });
    m.def("green_residual", &green_residual);

    py::class_<ExtensionHandle>(m, "Extension")
        .def(py::init([](std::shared_ptr<FiniteTriple> t, const CMatrix& b) { return ExtensionHandle(t, b); }))
        .def_property_readonly("B", &ExtensionHandle::B)
        .def("operator_matrix", [](const ExtensionHandle& e) { return operator_matrix(e); })
        .def("resolvent", [](const ExtensionHandle& e, cplx l) { return resolvent_matrix(e, l); })
        .def("m_function", [](const ExtensionHandle& e, cplx l) { return m_function(e, l); })
        .def("m_via_resolvent", [](const ExtensionHandle& e, cplx l, cplx l0) { return m_via_resolvent(e, l, l0); })
        .def("hilbert_residual", [](const ExtensionHandle& e, cplx l, cplx l0, const CVector& f) {
            return hilbert_identity_residual(e, l, l0, f);
        });
    m.def("krein_residual", &krein_residual);

    m.def("detect_report", [](const ExtensionHandle& ext, cplx center, double radius, int nodes) {
        const auto r = detect_report(ext, ContourSpec{center, radius, nodes});
        py::dict d;
        d["residual_bordered"] = r.residual_bordered;
        d["residual_full"] = r.residual_full;
        d["dims"] = py::make_tuple(r.dim_s, r.dim_t, r.dim_s_adjoint, r.dim_t_adjoint);
        return d;
    }, py::arg("ext"), py::arg("center"), py::arg("radius"), py::arg("nodes") = 64);

    m.def("fo_m", [](cplx l) { return fo_m(FOModel{}, l); });
    m.def("fo_operator_norms", [](const std::vector<cplx>& path) { return fo_operator_norm_scan(FOModel{}, path); });

    m.def("hl_m_matrix", [](const std::string& model, cplx l) { return hl_m_matrix(hl_from(model), l); },
          py::arg("model_json"), py::arg("lam"));
    m.def("hl_eigenvalues", [](const std::string& model, double a, double b, double c, double d) {
        return hl_eigenvalues(hl_from(model), Rectangle{a, b, c, d});
    }, py::arg("model_json"), py::arg("re_min"), py::arg("re_max"), py::arg("im_min"), py::arg("im_max"));
    m.def("hl_step_model", [] { return hl_model_to_json(hl_step_model()).dump(); });

    m.def("fr_m", [](const std::string& model, cplx l) { return fr_m(fr_from(model), l); },
          py::arg("model_json"), py::arg("lam"));

    m.def("run", [](const std::string& command, const std::string& config, std::uint64_t seed, std::optional<double> tol) {
        RunOptions opts;
        opts.seed = seed;
        opts.tol = tol;
        const auto out = run_command(command, Json::parse(config), opts);
        return py::make_tuple(out.exit_code, out.text);
    }, py::arg("command"), py::arg("config_json"), py::arg("seed") = kDefaultSeed, py::arg("tol") = py::none());
}
