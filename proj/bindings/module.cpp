#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cpapprox/bounds.hpp"
#include "cpapprox/calibration.hpp"
#include "cpapprox/heinrich.hpp"
#include "cpapprox/metrics.hpp"
#include "cpapprox/models.hpp"
#include "cpapprox/moments.hpp"
#include "cpapprox/pmf.hpp"

namespace py = pybind11;
using namespace cpapprox;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Exact laws of 1-dependent window statistics, compound Poisson "
      "targets, weighted distances, and explicit approximation bounds";

  py::register_exception<resource_error>(m, "ResourceError",
                                         PyExc_RuntimeError);

  py::class_<Pmf>(m, "Pmf")
      .def(py::init<>())
      .def(py::init([](std::vector<double> probs, double defect) {
             Pmf f;
             f.probs = std::move(probs);
             f.trunc_defect = defect;
             return f;
           }),
           py::arg("probs"), py::arg("trunc_defect") = 0.0)
      .def_readwrite("probs", &Pmf::probs)
      .def_readwrite("trunc_defect", &Pmf::trunc_defect)
      .def("at", &Pmf::at)
      .def("mean", &Pmf::mean)
      .def("variance", &Pmf::variance)
      .def("total_mass", &Pmf::total_mass)
      .def_static("point_mass", &Pmf::point_mass)
      .def("__len__", [](const Pmf& f) { return f.probs.size(); })
      .def("__repr__", [](const Pmf& f) {
        return "Pmf(support=" + std::to_string(f.probs.size()) +
               ", defect=" + std::to_string(f.trunc_defect) + ")";
      });

  py::class_<CpParams>(m, "CpParams")
      .def(py::init([](int s, std::vector<double> lambdas, double h, int c0) {
             CpParams p;
             p.s = s;
             p.lambdas = std::move(lambdas);
             p.h = h;
             p.c0 = c0;
             p.validate();
             return p;
           }),
           py::arg("s"), py::arg("lambdas"), py::arg("h") = 0.0,
           py::arg("c0") = 1)
      .def_readwrite("s", &CpParams::s)
      .def_readwrite("lambdas", &CpParams::lambdas)
      .def_readwrite("h", &CpParams::h)
      .def_readwrite("c0", &CpParams::c0);

  m.def("poisson_pmf", &poisson_pmf, py::arg("lam"),
        py::arg("weighted_tail_tol") = kDefaultTailTol, py::arg("h") = 0.0);
  m.def("compound_poisson_pmf", &compound_poisson_pmf, py::arg("params"),
        py::arg("weighted_tail_tol") = kDefaultTailTol);
  m.def("convolve", &convolve);
  m.def("scale_support", &scale_support);
  m.def("is_valid_pmf", &is_valid_pmf, py::arg("f"), py::arg("tol") = 1e-12);

  py::class_<SignedMeasure>(m, "SignedMeasure")
      .def(py::init<>())
      .def(py::init([](std::vector<double> values) {
             SignedMeasure s;
             s.values = std::move(values);
             return s;
           }),
           py::arg("values"))
      .def_readwrite("values", &SignedMeasure::values);

  m.def("weighted_difference", &weighted_difference);
  m.def("difference", &difference);
  m.def("total_variation_norm", &total_variation_norm);
  m.def("wasserstein_norm", &wasserstein_norm);

  py::class_<WassersteinCheck>(m, "WassersteinCheck")
      .def_readonly("lhs", &WassersteinCheck::lhs)
      .def_readonly("rhs", &WassersteinCheck::rhs)
      .def_readonly("holds", &WassersteinCheck::holds);
  m.def("check_wasserstein_inequality", &check_wasserstein_inequality);

  py::class_<PresmanReport>(m, "PresmanReport")
      .def_readonly("lhs", &PresmanReport::lhs)
      .def_readonly("rhs", &PresmanReport::rhs);
  m.def("presman_bound", &presman_bound, py::arg("m"),
        py::arg("quadrature_panels") = 4096);

  py::class_<WindowModel>(m, "WindowModel")
      .def_readonly("alphabet_probs", &WindowModel::alphabet_probs)
      .def_readonly("window_width", &WindowModel::window_width)
      .def_readonly("window_values", &WindowModel::window_values)
      .def_readonly("n_terms", &WindowModel::n_terms)
      .def_readonly("block_size", &WindowModel::block_size)
      .def_readonly("c0", &WindowModel::c0)
      .def("driver_length", &WindowModel::driver_length)
      .def("num_blocks", &WindowModel::num_blocks)
      .def("block_len", &WindowModel::block_len);

  m.def("make_window_model", &make_window_model, py::arg("alphabet_probs"),
        py::arg("window_width"), py::arg("window_values"), py::arg("n_terms"),
        py::arg("block_size"), py::arg("c0") = 0);
  m.def("make_kk_events", &make_kk_events);
  m.def("make_k_runs", &make_k_runs);
  m.def("make_cp2_model", &make_cp2_model);
  m.def("exact_sum_law", &exact_sum_law);
  m.def("brute_force_law", &brute_force_law);
  m.def("block_marginal", &block_marginal);

  py::class_<JointPair>(m, "JointPair")
      .def_readonly("p", &JointPair::p)
      .def("total_mass", &JointPair::total_mass);
  m.def("block_pair_joint", &block_pair_joint);
  m.def("sample_sum", &sample_sum, py::arg("model"), py::arg("seed"),
        py::arg("reps"));
  m.attr("SAMPLER_ALGORITHM") = kSamplerAlgorithm;

  m.def("factorial_moment", &factorial_moment);
  m.def("covariance", &covariance);

  py::class_<MomentSummary>(m, "MomentSummary")
      .def_readonly("nu", &MomentSummary::nu)
      .def_readonly("cov_adjacent", &MomentSummary::cov_adjacent)
      .def_readonly("gamma1", &MomentSummary::gamma1)
      .def_readonly("gamma2", &MomentSummary::gamma2)
      .def_readonly("nu1_max", &MomentSummary::nu1_max)
      .def_readonly("n_blocks", &MomentSummary::n_blocks)
      .def("nu_sum", &MomentSummary::nu_sum)
      .def("nu1_sq_sum", &MomentSummary::nu1_sq_sum)
      .def("cov_abs_sum", &MomentSummary::cov_abs_sum);
  m.def("summarize", &summarize);
  m.def("condition_target", &condition_target);

  py::class_<ConditionRow>(m, "ConditionRow")
      .def_readonly("cond3", &ConditionRow::cond3)
      .def_readonly("cond4", &ConditionRow::cond4)
      .def_readonly("cond5", &ConditionRow::cond5)
      .def_readonly("cond6", &ConditionRow::cond6);
  py::class_<ConvergenceReport>(m, "ConvergenceReport")
      .def_readonly("rows", &ConvergenceReport::rows)
      .def_readonly("trend3", &ConvergenceReport::trend3)
      .def_readonly("trend4", &ConvergenceReport::trend4)
      .def_readonly("trend5", &ConvergenceReport::trend5)
      .def_readonly("trend6", &ConvergenceReport::trend6);
  m.def("check_convergence_conditions", &check_convergence_conditions);

  py::class_<BoundConstants>(m, "BoundConstants")
      .def_readonly("a", &BoundConstants::a)
      .def_readonly("psi", &BoundConstants::psi)
      .def_readonly("k1", &BoundConstants::k1)
      .def_readonly("k2", &BoundConstants::k2)
      .def_readonly("k3", &BoundConstants::k3)
      .def_readonly("k4", &BoundConstants::k4);
  m.def("constants", &constants);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("a", &BoundReport::a)
      .def_readonly("psi", &BoundReport::psi)
      .def_readonly("k1", &BoundReport::k1)
      .def_readonly("k2", &BoundReport::k2)
      .def_readonly("k3", &BoundReport::k3)
      .def_readonly("k4", &BoundReport::k4)
      .def_readonly("term_moment_match", &BoundReport::term_moment_match)
      .def_readonly("term_nu_s1", &BoundReport::term_nu_s1)
      .def_readonly("term_nu1_sq", &BoundReport::term_nu1_sq)
      .def_readonly("term_cov", &BoundReport::term_cov)
      .def_readonly("total", &BoundReport::total)
      .def_readonly("precondition_ok", &BoundReport::precondition_ok)
      .def_readonly("gamma1", &BoundReport::gamma1);
  m.def("theorem2_bound", &theorem2_bound);
  m.def("corollary_bound", &corollary_bound);
  m.def("wasserstein_bound", &wasserstein_bound);

  py::class_<EvalPoint>(m, "EvalPoint")
      .def(py::init<double, double>(), py::arg("t"), py::arg("h"))
      .def_readonly("t", &EvalPoint::t)
      .def_readonly("h", &EvalPoint::h)
      .def("u", &EvalPoint::u);

  py::class_<JointLaw>(m, "JointLaw")
      .def_readonly("n_blocks", &JointLaw::n_blocks)
      .def_readonly("arity", &JointLaw::arity)
      .def_readonly("probs", &JointLaw::probs)
      .def("marginal", &JointLaw::marginal)
      .def("value_at", &JointLaw::value_at);
  m.def("joint_law", &joint_law);
  m.def("centered_expectation", &centered_expectation);

  py::class_<RegionReport>(m, "RegionReport")
      .def_readonly("w", &RegionReport::w)
      .def_readonly("in_region", &RegionReport::in_region);
  m.def("region_check", &region_check);
  m.def("phi_sequence", &phi_sequence);
  m.def("log_sum_A", &log_sum_A);

  py::class_<LemmaCheck>(m, "LemmaCheck")
      .def_readonly("name", &LemmaCheck::name)
      .def_readonly("value", &LemmaCheck::value)
      .def_readonly("bound", &LemmaCheck::bound)
      .def_readonly("holds", &LemmaCheck::holds);
  py::class_<LemmaReport>(m, "LemmaReport")
      .def_readonly("checks", &LemmaReport::checks)
      .def_readonly("all_hold", &LemmaReport::all_hold);
  m.def("lemma_checks", &lemma_checks);

  py::class_<BergstromReport>(m, "BergstromReport")
      .def_readonly("lhs", &BergstromReport::lhs)
      .def_readonly("rhs", &BergstromReport::rhs)
      .def_readonly("abs_err", &BergstromReport::abs_err);
  m.def("bergstrom_check", &bergstrom_check);

  m.def("calibrate_kk_events", &calibrate_kk_events);
  m.def("calibrate_k_runs", &calibrate_k_runs);
  py::class_<Cp2Calibration>(m, "Cp2Calibration")
      .def_readonly("p", &Cp2Calibration::p)
      .def_readonly("pbar", &Cp2Calibration::pbar);
  m.def("calibrate_cp2", &calibrate_cp2);
}
