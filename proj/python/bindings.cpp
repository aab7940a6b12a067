#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "annpick/errors.hpp"
#include "annpick/fock.hpp"
#include "annpick/free_outer.hpp"
#include "annpick/hardy.hpp"
#include "annpick/kernels.hpp"
#include "annpick/laurent.hpp"

namespace py = pybind11;
using namespace annpick;

namespace {

std::string laurent_repr(const LaurentPoly& f) {
    std::ostringstream os;
    os << "LaurentPoly({";
    bool first = true;
    for (const auto& [n, c] : f.coeffs()) {
        if (!first) os << ", ";
        first = false;
        os << n << ": (" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "j)";
    }
    os << "})";
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weighted Hardy space of the annulus r < |z| < 1: kernels, Pick "
              "certificates, factorization, cyclicity and the ball embedding";

    auto validation =
        py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", validation.ptr());
    py::register_exception<OpError>(m, "OpError", PyExc_RuntimeError);

    py::enum_<Space>(m, "Space")
        .value("Annulus", Space::Annulus)
        .value("DiskHardy", Space::DiskHardy)
        .value("Disk0Hardy", Space::Disk0Hardy);

    py::enum_<KernelId>(m, "KernelId")
        .value("AnnulusPick", KernelId::AnnulusPick)
        .value("Szego", KernelId::Szego)
        .value("Disk0Szego", KernelId::Disk0Szego)
        .value("DruryArveson2", KernelId::DruryArveson2);

    py::enum_<Ternary>(m, "Ternary")
        .value("False_", Ternary::False)
        .value("True_", Ternary::True)
        .value("Undecided", Ternary::Undecided);

    py::enum_<FactorPath>(m, "FactorPath")
        .value("DiskAnalytic", FactorPath::DiskAnalytic)
        .value("Disk0Analytic", FactorPath::Disk0Analytic)
        .value("HeuristicSearch", FactorPath::HeuristicSearch);

    py::enum_<BoundKind>(m, "BoundKind")
        .value("LowerBoundOnMultNorm", BoundKind::LowerBoundOnMultNorm)
        .value("PsdWitness", BoundKind::PsdWitness);

    py::class_<AnnulusContext>(m, "AnnulusContext")
        .def(py::init<>())
        .def_static("make", &AnnulusContext::make, py::arg("r"))
        .def_readwrite("r", &AnnulusContext::r)
        .def_readwrite("z0", &AnnulusContext::z0)
        .def_readwrite("kernel_window", &AnnulusContext::kernel_window)
        .def_readwrite("tol_exact", &AnnulusContext::tol_exact)
        .def_readwrite("tol_psd", &AnnulusContext::tol_psd)
        .def_readwrite("tol_numeric", &AnnulusContext::tol_numeric)
        .def_readwrite("seed", &AnnulusContext::seed)
        .def("validate", &AnnulusContext::validate)
        .def("contains", &AnnulusContext::contains, py::arg("z"))
        .def("__repr__", [](const AnnulusContext& ctx) {
            std::ostringstream os;
            os << "AnnulusContext(r=" << ctx.r << ")";
            return os.str();
        });

    py::class_<LaurentPoly>(m, "LaurentPoly")
        .def(py::init<>())
        .def(py::init([](const std::map<int, Complex>& coeffs) {
                 return LaurentPoly(coeffs);
             }),
             py::arg("coeffs"))
        .def_static("zero", &LaurentPoly::zero)
        .def_static("constant", &LaurentPoly::constant, py::arg("c"))
        .def_static("monomial", &LaurentPoly::monomial, py::arg("n"),
                    py::arg("c") = Complex(1.0))
        .def("is_zero", &LaurentPoly::is_zero)
        .def("support_min", &LaurentPoly::support_min)
        .def("support_max", &LaurentPoly::support_max)
        .def("span", &LaurentPoly::span)
        .def("coeff", &LaurentPoly::coeff, py::arg("n"))
        .def("set_coeff", &LaurentPoly::set_coeff, py::arg("n"), py::arg("c"))
        .def("coeffs", [](const LaurentPoly& f) { return f.coeffs(); })
        .def("term_count", &LaurentPoly::term_count)
        .def("max_abs_coeff", &LaurentPoly::max_abs_coeff)
        .def("__getitem__", &LaurentPoly::coeff)
        .def("__setitem__", &LaurentPoly::set_coeff)
        .def("__call__", [](const LaurentPoly& f, Complex z) { return eval_at(f, z); })
        .def("__add__", [](const LaurentPoly& a, const LaurentPoly& b) { return a + b; })
        .def("__sub__", [](const LaurentPoly& a, const LaurentPoly& b) { return a - b; })
        .def("__mul__", [](const LaurentPoly& a, const LaurentPoly& b) { return multiply(a, b); })
        .def("__mul__", [](const LaurentPoly& a, Complex s) { return a * s; })
        .def("__rmul__", [](const LaurentPoly& a, Complex s) { return a * s; })
        .def("__repr__", &laurent_repr);

    m.def("annulus_weight", &annulus_weight, py::arg("n"), py::arg("r"));
    m.def("eval_at", &eval_at, py::arg("f"), py::arg("z"));
    m.def("multiply", &multiply, py::arg("f"), py::arg("g"));
    m.def("divide_exact", &divide_exact, py::arg("num"), py::arg("den"),
          py::arg("rel_tol") = 1e-8);
    m.def("inner_product", &inner_product, py::arg("f"), py::arg("g"), py::arg("ctx"),
          py::arg("space") = Space::Annulus);
    m.def("norm", &norm, py::arg("f"), py::arg("ctx"), py::arg("space") = Space::Annulus);
    m.def("moment_vector", &moment_vector, py::arg("f"), py::arg("ctx"), py::arg("window"));
    m.def("kernel_expansion", &kernel_expansion, py::arg("lam"), py::arg("ctx"));
    m.def("reproducing_tail_bound", &reproducing_tail_bound, py::arg("f"), py::arg("lam"),
          py::arg("ctx"));
    m.def("reflect_to_disk0", &reflect_to_disk0, py::arg("f"), py::arg("ctx"));

    m.def("kernel_eval", &kernel_eval, py::arg("id"), py::arg("lam"), py::arg("mu"),
          py::arg("ctx"));
    m.def("ball2_kernel", &ball2_kernel, py::arg("z"), py::arg("w"));
    m.def("embed_point", &embed_point, py::arg("z"), py::arg("ctx"));
    m.def("certification_grid", &certification_grid, py::arg("ctx"), py::arg("grid_size"));
    m.def("boundary_sup_norm", &boundary_sup_norm, py::arg("phi"), py::arg("ctx"));

    py::class_<PickCertificate>(m, "PickCertificate")
        .def_readonly("points", &PickCertificate::points)
        .def_readonly("min_eigenvalue", &PickCertificate::min_eigenvalue)
        .def_readonly("bound_kind", &PickCertificate::bound_kind)
        .def_readonly("t_star", &PickCertificate::t_star)
        .def_readonly("grid_size", &PickCertificate::grid_size);

    py::class_<MultNormBounds>(m, "MultNormBounds")
        .def_readonly("lower", &MultNormBounds::lower)
        .def_readonly("upper", &MultNormBounds::upper)
        .def_readonly("sup_norm", &MultNormBounds::sup_norm)
        .def_readonly("certificate", &MultNormBounds::certificate);

    m.def("mult_norm_bounds", &mult_norm_bounds, py::arg("phi"), py::arg("ctx"),
          py::arg("grid_size") = 40);
    m.def("mixed_multiplier_bound", &mixed_multiplier_bound, py::arg("f"), py::arg("g"),
          py::arg("ctx"));

    py::class_<MixedLowerBound>(m, "MixedLowerBound")
        .def_readonly("lower", &MixedLowerBound::lower)
        .def_readonly("certificate", &MixedLowerBound::certificate);

    m.def("mixed_mult_lower_bound", &mixed_mult_lower_bound, py::arg("phi"), py::arg("ctx"),
          py::arg("grid_size"), py::arg("bracket_hi"));

    py::class_<PolyRoots>(m, "PolyRoots")
        .def(py::init<>())
        .def_readwrite("leading", &PolyRoots::leading)
        .def_readwrite("roots", &PolyRoots::roots)
        .def("degree", &PolyRoots::degree);

    py::class_<RationalLaurent>(m, "RationalLaurent")
        .def(py::init<>())
        .def_readwrite("num", &RationalLaurent::num)
        .def_readwrite("den", &RationalLaurent::den)
        .def("eval", &RationalLaurent::eval, py::arg("z"))
        .def("__call__", &RationalLaurent::eval, py::arg("z"))
        .def("is_polynomial", &RationalLaurent::is_polynomial);

    py::class_<DiskFactorization>(m, "DiskFactorization")
        .def_readonly("inner", &DiskFactorization::inner)
        .def_readonly("outer", &DiskFactorization::outer)
        .def_readonly("phase", &DiskFactorization::phase)
        .def_readonly("domain", &DiskFactorization::domain);

    m.def("poly_roots", &poly_roots, py::arg("p"));
    m.def("from_roots", &from_roots, py::arg("pr"));
    m.def("cluster_roots", &cluster_roots, py::arg("raw"), py::arg("rel_tol"));
    m.def("poly_inner_outer", &poly_inner_outer, py::arg("p"), py::arg("ctx"));
    m.def("autocorrelation", &autocorrelation, py::arg("p"));
    m.def("fejer_riesz_outer", &fejer_riesz_outer, py::arg("autocorr"), py::arg("ctx"));
    m.def("disk0_inner_outer", &disk0_inner_outer, py::arg("p"), py::arg("ctx"));
    m.def("expand_on_annulus", &expand_on_annulus, py::arg("phi"), py::arg("ctx"));

    py::class_<MomentFunctional>(m, "MomentFunctional")
        .def_readonly("window", &MomentFunctional::window)
        .def_readonly("values", &MomentFunctional::values);

    m.def("moment_functional", &moment_functional, py::arg("f"), py::arg("ctx"),
          py::arg("window") = -1);
    m.def("moments_equal", &moments_equal, py::arg("f"), py::arg("g"), py::arg("ctx"));

    py::class_<SubinnerEvidence>(m, "SubinnerEvidence")
        .def_readonly("mult_norm_lower", &SubinnerEvidence::mult_norm_lower)
        .def_readonly("mult_norm_upper", &SubinnerEvidence::mult_norm_upper)
        .def_readonly("sup_norm", &SubinnerEvidence::sup_norm)
        .def_readonly("norm_exact", &SubinnerEvidence::norm_exact)
        .def_readonly("norm_equality_residual", &SubinnerEvidence::norm_equality_residual)
        .def_readonly("certificate", &SubinnerEvidence::certificate);

    py::class_<SubinnerResult>(m, "SubinnerResult")
        .def_readonly("flag", &SubinnerResult::flag)
        .def_readonly("evidence", &SubinnerResult::evidence);

    m.def("is_subinner",
          py::overload_cast<const RationalLaurent&, const LaurentPoly&, const AnnulusContext&,
                            int>(&is_subinner),
          py::arg("phi"), py::arg("h"), py::arg("ctx"), py::arg("grid_size") = 40);
    m.def("is_subinner",
          py::overload_cast<const LaurentPoly&, const LaurentPoly&, const AnnulusContext&,
                            int>(&is_subinner),
          py::arg("phi"), py::arg("h"), py::arg("ctx"), py::arg("grid_size") = 40);

    py::class_<FreeOuterResult>(m, "FreeOuterResult")
        .def_readonly("flag", &FreeOuterResult::flag)
        .def_readonly("reason", &FreeOuterResult::reason)
        .def_readonly("witness_root", &FreeOuterResult::witness_root)
        .def_readonly("has_witness", &FreeOuterResult::has_witness);

    m.def("is_free_outer", &is_free_outer, py::arg("f"), py::arg("ctx"));

    py::class_<FactorEvidence>(m, "FactorEvidence")
        .def_readonly("reassembly_residual", &FactorEvidence::reassembly_residual)
        .def_readonly("norm_equality_residual", &FactorEvidence::norm_equality_residual)
        .def_readonly("moment_match_residual", &FactorEvidence::moment_match_residual)
        .def_readonly("h_at_z0", &FactorEvidence::h_at_z0)
        .def_readonly("subinner_check", &FactorEvidence::subinner_check)
        .def_readonly("subinner_checked", &FactorEvidence::subinner_checked);

    py::class_<FactorizationResult>(m, "FactorizationResult")
        .def_readonly("subinner", &FactorizationResult::subinner)
        .def_readonly("free_outer", &FactorizationResult::free_outer)
        .def_readonly("path", &FactorizationResult::path)
        .def_readonly("certified", &FactorizationResult::certified)
        .def_readonly("evidence", &FactorizationResult::evidence)
        .def_readonly("search_value", &FactorizationResult::search_value)
        .def_readonly("search_feasibility", &FactorizationResult::search_feasibility);

    m.def("factor_subinner_free_outer", &factor_subinner_free_outer, py::arg("f"),
          py::arg("ctx"), py::arg("search_N") = -1, py::arg("restarts") = 20);

    py::class_<CyclicityResult>(m, "CyclicityResult")
        .def_readonly("residual", &CyclicityResult::residual)
        .def_readonly("lower_bound", &CyclicityResult::lower_bound);

    m.def("cyclicity_residual", &cyclicity_residual, py::arg("f"), py::arg("ctx"),
          py::arg("degree"));
    m.def("cyclicity_curve", &cyclicity_curve, py::arg("f"), py::arg("ctx"),
          py::arg("max_degree"));

    py::class_<ExtremalResult>(m, "ExtremalResult")
        .def_readonly("best_h", &ExtremalResult::best_h)
        .def_readonly("value", &ExtremalResult::value)
        .def_readonly("feasibility", &ExtremalResult::feasibility)
        .def_readonly("best_restart", &ExtremalResult::best_restart)
        .def_readonly("feasible", &ExtremalResult::feasible);

    m.def("extremal_search", &extremal_search, py::arg("f"), py::arg("ctx"), py::arg("N"),
          py::arg("restarts"));

    py::class_<DAEmbedding>(m, "DAEmbedding")
        .def_readonly("r", &DAEmbedding::r)
        .def_readonly("M", &DAEmbedding::M)
        .def_readonly("b", &DAEmbedding::b)
        .def_readonly("tail_bound", &DAEmbedding::tail_bound);

    m.def("da_embedding_coeffs", &da_embedding_coeffs, py::arg("f"), py::arg("ctx"),
          py::arg("M"));
    m.def("monomial_norm_sq", &monomial_norm_sq, py::arg("i"), py::arg("j"));
    m.def("binomial", &binomial, py::arg("n"), py::arg("k"));

    py::class_<IsometryCheck>(m, "IsometryCheck")
        .def_readonly("lhs", &IsometryCheck::lhs)
        .def_readonly("rhs", &IsometryCheck::rhs)
        .def_readonly("gap", &IsometryCheck::gap)
        .def_readonly("tail_bound", &IsometryCheck::tail_bound)
        .def_readonly("certified", &IsometryCheck::certified);

    m.def("da_isometry_check", &da_isometry_check, py::arg("f"), py::arg("ctx"),
          py::arg("M"));

    py::class_<NCSeries>(m, "NCSeries")
        .def_readonly("max_len", &NCSeries::max_len)
        .def_readonly("coeffs", &NCSeries::coeffs);

    m.def("nc_lift", &nc_lift, py::arg("emb"), py::arg("max_len"));

    py::class_<LeftOuterResidual>(m, "LeftOuterResidual")
        .def_readonly("m_G", &LeftOuterResidual::m_G)
        .def_readonly("by_degree", &LeftOuterResidual::by_degree)
        .def_readonly("residual", &LeftOuterResidual::residual)
        .def_readonly("rows", &LeftOuterResidual::rows)
        .def_readonly("cols", &LeftOuterResidual::cols);

    m.def("left_outer_residual", &left_outer_residual, py::arg("emb"), py::arg("ctx"),
          py::arg("m_G"));
}
