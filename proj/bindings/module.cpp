#include "kpcohft/changevars.hpp"
#include "kpcohft/hodge.hpp"
#include "kpcohft/kpcheck.hpp"
#include "kpcohft/spectral.hpp"
#include "kpcohft/tau.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace kpcohft;

namespace pybind11::detail {

// Rat <-> fractions.Fraction, through the exact "num/den" string form.
// Floats are rejected on the way in.
template <> struct type_caster<Rat> {
    PYBIND11_TYPE_CASTER(Rat, const_name("Fraction"));

    bool load(handle src, bool) {
        if (PyFloat_Check(src.ptr())) return false;
        try {
            value = rat_from_string(py::str(src).cast<std::string>());
            return true;
        } catch (const std::exception &) {
            return false;
        }
    }

    static handle cast(const Rat &r, return_value_policy, handle) {
        py::object fraction = py::module_::import("fractions").attr("Fraction");
        return fraction(rat_to_string(r)).release();
    }
};

} // namespace pybind11::detail

namespace {

py::dict hgn_dict(const std::map<Partition, Rat> &h) {
    py::dict d;
    for (const auto &[mu, v] : h) d[py::tuple(py::cast(mu))] = py::cast(v);
    return d;
}

Poly poly_from(const std::vector<Rat> &c) { return Poly(c); }

SpectralCurve make_curve(const std::vector<Rat> &dx_num, const std::vector<Rat> &dx_den,
                         const std::vector<Rat> &dy_num, const std::vector<Rat> &dy_den) {
    return SpectralCurve(RatFn(poly_from(dx_num), poly_from(dx_den)),
                         RatFn(poly_from(dy_num), poly_from(dy_den)));
}

} // namespace

PYBIND11_MODULE(_kpcohft, m) {
    m.doc() = "exact KP tau functions, change of variables, topological recursion";

    py::class_<HLaurent>(m, "HLaurent")
        .def("coeff", &HLaurent::coeff, py::arg("e"))
        .def("coeffs", &HLaurent::coeffs)
        .def("valid_to", &HLaurent::valid_to)
        .def("is_zero", &HLaurent::is_zero);

    py::class_<PSeries>(m, "PSeries")
        .def("coeff_of_parts", &PSeries::coeff_of_parts, py::arg("parts"))
        .def("weight_cap", &PSeries::weight_cap)
        .def("is_zero", &PSeries::is_zero)
        .def("__sub__", [](const PSeries &a, const PSeries &b) { return a - b; });

    py::class_<QSeries>(m, "QSeries")
        .def("coeff", &QSeries::coeff, py::arg("m"))
        .def("is_zero", &QSeries::is_zero);

    py::class_<TauData>(m, "TauData")
        .def_static("naive_hodge", &TauData::naive_hodge)
        .def_static("vertex_data", &TauData::vertex_data, py::arg("w"), py::arg("beta"),
                    py::arg("kmax"), py::arg("mmax"))
        .def_static("family_II", &TauData::family_II, py::arg("alpha"), py::arg("R1"),
                    py::arg("R2"), py::arg("R3"), py::arg("R4"), py::arg("lambda_"),
                    py::arg("kmax"), py::arg("mmax"));

    m.def("build_tau", &build_tau, py::arg("data"), py::arg("weight_cap"), py::arg("e_max"));
    m.def("free_energy", &free_energy, py::arg("Z"));
    m.def(
        "extract_Hgn",
        [](const PSeries &F, int g, int n) { return hgn_dict(extract_Hgn(F, g, n)); },
        py::arg("F"), py::arg("g"), py::arg("n"));

    py::class_<ResidualReport>(m, "ResidualReport")
        .def_readonly("label", &ResidualReport::label)
        .def_readonly("pass_", &ResidualReport::pass)
        .def_readonly("weight_cap", &ResidualReport::weight_cap)
        .def_readonly("hbar_cap", &ResidualReport::hbar_cap);

    m.def("kp_residual_q1", &kp_residual_q1, py::arg("F"), py::arg("hbar_cap"),
          py::arg("weight_cap"));
    m.def("kp_residual_q2", &kp_residual_q2, py::arg("F"), py::arg("hbar_cap"),
          py::arg("weight_cap"));
    m.def("kp_residual_t", &kp_residual_t, py::arg("F"), py::arg("which"), py::arg("hbar_cap"),
          py::arg("weight_cap"));
    m.def("pluecker_check", &pluecker_check, py::arg("Z"), py::arg("size_cap"),
          py::arg("hbar_cap"));
    m.def("hirota_residual", &hirota_residual, py::arg("F"), py::arg("weight_cap"),
          py::arg("hbar_cap"));

    py::class_<SpectralData>(m, "SpectralData")
        .def_static("build_X", &SpectralData::build_X, py::arg("data"), py::arg("order"))
        .def_static("from_X_series", &SpectralData::from_X_series, py::arg("X"))
        .def_readonly("X", &SpectralData::X);

    m.def("p_of_q", &p_of_q, py::arg("sd"), py::arg("k"), py::arg("M"));
    m.def("t_recursion", &t_recursion, py::arg("sd"), py::arg("j"), py::arg("k"), py::arg("M"));
    m.def("substitute_p_of_q", &substitute_p_of_q, py::arg("F"), py::arg("sd"));
    m.def("drop_nonpositive_hbar", &drop_nonpositive_hbar, py::arg("F"));

    py::class_<FinitenessVerdict>(m, "FinitenessVerdict")
        .def_readonly("polynomial", &FinitenessVerdict::polynomial)
        .def_readonly("degree", &FinitenessVerdict::degree)
        .def_readonly("fully_factored", &FinitenessVerdict::fully_factored)
        .def_readonly("roots_c", &FinitenessVerdict::roots_c)
        .def_readonly("log_coeffs", &FinitenessVerdict::log_coeffs);
    m.def("finiteness_check", &finiteness_check, py::arg("sd"), py::arg("degree_cap"));

    m.def("inversion_X", &inversion_X, py::arg("w"), py::arg("beta"), py::arg("order"));
    m.def("inversion_coefficient", &inversion_coefficient, py::arg("w"), py::arg("beta"),
          py::arg("m"));
    m.def("inversion_check", &inversion_check, py::arg("w"), py::arg("beta"), py::arg("order"));
    m.def("moebius_relation_check", &moebius_relation_check, py::arg("w"), py::arg("beta"),
          py::arg("order"));
    m.def("mv_rhs", &mv_rhs, py::arg("w"), py::arg("beta"), py::arg("size_cap"),
          py::arg("hbar_cap"));

    m.def("cohft_generating", &cohft_generating, py::arg("lambda_weights"), py::arg("T"),
          py::arg("hbar_max"), py::arg("qcap"));

    py::class_<TripleHodgeParams>(m, "TripleHodgeParams")
        .def(py::init<const Rat &, const Rat &>(), py::arg("u"), py::arg("s"))
        .def_property_readonly("u", [](const TripleHodgeParams &p) { return p.u; })
        .def_property_readonly("s", [](const TripleHodgeParams &p) { return p.s; })
        .def("w", &TripleHodgeParams::w)
        .def("beta", &TripleHodgeParams::beta)
        .def("cy_triple", &TripleHodgeParams::cy_triple);
    m.def("triple_hodge_T", &triple_hodge_T, py::arg("p"), py::arg("k"), py::arg("M"));
    m.def("triple_hodge_pipeline", &triple_hodge_pipeline, py::arg("p"), py::arg("qcap"),
          py::arg("hbar_cap"));

    py::class_<SpectralCurve>(m, "SpectralCurve")
        .def(py::init(&make_curve), py::arg("dx_num"), py::arg("dx_den"), py::arg("dy_num"),
             py::arg("dy_den"))
        .def_static("airy", &SpectralCurve::airy)
        .def("with_dy_scaled", &SpectralCurve::with_dy_scaled, py::arg("lambda_"))
        .def("finite_ramification", &SpectralCurve::finite_ramification);

    py::class_<OmegaRep>(m, "OmegaRep")
        .def_readonly("g", &OmegaRep::g)
        .def_readonly("n", &OmegaRep::n)
        .def("eval", &OmegaRep::eval, py::arg("z"));

    py::class_<CorrelatorTable>(m, "CorrelatorTable")
        .def(py::init<SpectralCurve>(), py::arg("curve"))
        .def("get", &CorrelatorTable::get, py::arg("g"), py::arg("n"),
             py::return_value_policy::reference_internal);

    py::class_<LoopEquationReport>(m, "LoopEquationReport")
        .def_readonly("linear_pass", &LoopEquationReport::linear_pass)
        .def_readonly("quadratic_pass", &LoopEquationReport::quadratic_pass)
        .def_readonly("linear_order", &LoopEquationReport::linear_order)
        .def_readonly("quadratic_order", &LoopEquationReport::quadratic_order);
    m.def(
        "loop_equation_check",
        [](CorrelatorTable &tab, int g, int n, int depth) {
            return loop_equation_check(tab, g, n, depth);
        },
        py::arg("table"), py::arg("g"), py::arg("n"), py::arg("depth"));

    m.def("curve_X", &curve_X, py::arg("curve"), py::arg("order"));
    m.def(
        "tr_expansion_coefficient",
        [](const SpectralCurve &c, const OmegaRep &w, const std::vector<int> &k, int order) {
            return doss_coefficient(doss_expand(c, w, order), k);
        },
        py::arg("curve"), py::arg("omega"), py::arg("k"), py::arg("order"));
    m.def("projection_check", &projection_check, py::arg("curve"), py::arg("omega"));
}
