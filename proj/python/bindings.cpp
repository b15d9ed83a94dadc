#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include "mzroots/errors.hpp"
#include "mzroots/experiments.hpp"
#include "mzroots/lemmas.hpp"
#include "mzroots/mzbounds.hpp"
#include "mzroots/weights.hpp"

namespace py = pybind11;
using namespace mzroots;

PYBIND11_MODULE(_mzroots, m) {
  m.doc() = "Perturbed roots of unity: MZ constants, A_p weights, Helson-Szego checks";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<CollisionError>(m, "CollisionError", base.ptr());
  py::register_exception<GridTooCoarse>(m, "GridTooCoarse", base.ptr());
  py::register_exception<DegreeMismatch>(m, "DegreeMismatch", base.ptr());
  py::register_exception<SingularError>(m, "SingularError", base.ptr());

  py::enum_<ScheduleKind>(m, "ScheduleKind")
      .value("constant", ScheduleKind::constant)
      .value("alternating", ScheduleKind::alternating)
      .value("random", ScheduleKind::random)
      .value("one_sided_necessity", ScheduleKind::one_sided_necessity)
      .value("explicit", ScheduleKind::explicit_values);

  py::class_<PerturbationSchedule>(m, "PerturbationSchedule")
      .def_static("constant", &PerturbationSchedule::constant, py::arg("delta"))
      .def_static("alternating", &PerturbationSchedule::alternating, py::arg("delta"))
      .def_static("random", &PerturbationSchedule::random, py::arg("delta"), py::arg("seed"))
      .def_static("one_sided_necessity", &PerturbationSchedule::one_sided_necessity, py::arg("delta"))
      .def_static("explicit", &PerturbationSchedule::explicit_offsets, py::arg("values"))
      .def_readonly("kind", &PerturbationSchedule::kind)
      .def_readonly("delta", &PerturbationSchedule::delta)
      .def_readonly("seed", &PerturbationSchedule::seed)
      .def("offsets", &PerturbationSchedule::offsets, py::arg("n"))
      .def("amplitude", &PerturbationSchedule::amplitude);

  py::class_<NodeSet>(m, "NodeSet")
      .def(py::init<int, std::vector<double>>(), py::arg("n"), py::arg("angles"))
      .def_property_readonly("n", &NodeSet::n)
      .def_property_readonly("angles", &NodeSet::angles)
      .def("points", &NodeSet::points)
      .def("__len__", &NodeSet::size)
      .def("__eq__", [](const NodeSet& a, const NodeSet& b) { return a == b; });

  m.def("roots_of_unity", &roots_of_unity, py::arg("n"));
  m.def("perturbed_family", &perturbed_family, py::arg("n"), py::arg("schedule"));
  m.def("necessity_family", &necessity_family, py::arg("n"), py::arg("delta"));
  m.def("separation", &separation, py::arg("nodes"));

  py::class_<Polynomial>(m, "Polynomial")
      .def(py::init<std::vector<cplx>>(), py::arg("coeffs"))
      .def_property_readonly("coeffs", [](const Polynomial& p) { return p.coeffs(); })
      .def_property_readonly("degree_bound", &Polynomial::degree_bound)
      .def("__call__", py::overload_cast<double>(&Polynomial::operator(), py::const_), py::arg("theta"));

  py::class_<CircleGrid>(m, "CircleGrid")
      .def(py::init<int>(), py::arg("size"))
      .def_static("oversampled", &CircleGrid::oversampled, py::arg("n"), py::arg("factor"))
      .def_property_readonly("size", &CircleGrid::size)
      .def("angle", &CircleGrid::angle, py::arg("m"));

  m.def("random_poly", &random_poly, py::arg("n"), py::arg("seed"));
  m.def("circle_norm", &circle_norm, py::arg("poly"), py::arg("p"), py::arg("grid"));
  m.def("sample_mean", &sample_mean, py::arg("poly"), py::arg("nodes"), py::arg("p"));

  py::class_<MZReport>(m, "MZReport")
      .def_readonly("n", &MZReport::n)
      .def_readonly("p", &MZReport::p)
      .def_readonly("lower_frame", &MZReport::lower_frame)
      .def_readonly("upper_frame", &MZReport::upper_frame)
      .def_readonly("c_p", &MZReport::c_p)
      .def_readonly("sigma_min", &MZReport::sigma_min)
      .def_readonly("sigma_max", &MZReport::sigma_max)
      .def_property_readonly("method", [](const MZReport& r) { return std::string(to_string(r.method)); })
      .def("is_lower_bound", &MZReport::is_lower_bound);

  m.def("mz_constant_p2", &mz_constant_p2, py::arg("nodes"), py::arg("max_degree") = kDenseSvdMaxDegree);
  m.def(
      "mz_constant_probe",
      [](const NodeSet& nodes, double p, int budget, std::uint64_t seed, bool singular_vectors) {
        ProbeOptions o;
        o.budget = budget;
        o.seed = seed;
        o.singular_vector_probes = singular_vectors;
        py::gil_scoped_release release;
        return mz_constant_probe(nodes, p, o);
      },
      py::arg("nodes"), py::arg("p"), py::arg("budget") = 256, py::arg("seed") = 0,
      py::arg("singular_vector_probes") = true);
  m.def(
      "reconstruct_ls",
      [](const std::vector<cplx>& samples, const NodeSet& nodes) { return reconstruct_ls(samples, nodes); },
      py::arg("samples"), py::arg("nodes"));

  m.def("rho_kappa", &rho_kappa, py::arg("n"), py::arg("kappa"));
  m.def(
      "generating_log_weight",
      [](const NodeSet& nodes, double radius, int grid_size) {
        return generating_weight(nodes, radius, CircleGrid(grid_size)).log_values;
      },
      py::arg("nodes"), py::arg("radius"), py::arg("grid_size"));

  py::class_<ApReport>(m, "ApReport")
      .def_readonly("p", &ApReport::p)
      .def_readonly("k_p", &ApReport::k_p)
      .def_readonly("argmax_center", &ApReport::argmax_center)
      .def_readonly("argmax_length", &ApReport::argmax_length);

  m.def(
      "ap_constant",
      [](std::vector<double> log_values, double p) {
        const int size = static_cast<int>(log_values.size());
        return ap_constant(WeightSamples{CircleGrid(size), std::move(log_values)}, p);
      },
      py::arg("log_values"), py::arg("p"));
  m.def(
      "conjugate", [](const std::vector<double>& v) { return conjugate(v); }, py::arg("samples"));

  py::class_<HelsonSzegoReport>(m, "HelsonSzegoReport")
      .def_readonly("u_sup", &HelsonSzegoReport::u_sup)
      .def_readonly("v_sup", &HelsonSzegoReport::v_sup)
      .def_readonly("conj_residual", &HelsonSzegoReport::conj_residual)
      .def_readonly("passes", &HelsonSzegoReport::passes)
      .def_readonly("marginal", &HelsonSzegoReport::marginal);

  m.def(
      "helson_szego_check",
      [](int n, const PerturbationSchedule& s, double kappa, int grid_size) {
        return helson_szego_check(n, s, kappa, CircleGrid(grid_size));
      },
      py::arg("n"), py::arg("schedule"), py::arg("kappa"), py::arg("grid_size"));
  m.def("perturbation_threshold", &perturbation_threshold, py::arg("p"));
  m.def("conjugate_exponent_max", &conjugate_exponent_max, py::arg("p"));
  m.def("limit_weight", &limit_weight, py::arg("t"), py::arg("delta"));
  m.def("limit_weight_arc_product", &limit_weight_arc_product, py::arg("delta"), py::arg("p"), py::arg("eps"));
  m.def(
      "phi_limit_deviation",
      [](int n, double delta, int grid_size) { return phi_limit_deviation(n, delta, CircleGrid(grid_size)); },
      py::arg("n"), py::arg("delta"), py::arg("grid_size"));

  m.def("kernel_h", &kernel_h, py::arg("t"), py::arg("rho"));
  m.def(
      "lemma_ratio_bound",
      [](int n, double kappa, double alpha, const PerturbationSchedule& s) {
        return lemma_ratio_bound(LemmaProbe::with_default_grid(n, kappa, alpha, s));
      },
      py::arg("n"), py::arg("kappa"), py::arg("alpha"), py::arg("schedule"));

  m.def(
      "sweep_csv",
      [](double p, std::vector<int> n_list, std::vector<double> delta_list, std::uint64_t seed) {
        SweepConfig cfg;
        cfg.p = p;
        cfg.n_list = std::move(n_list);
        cfg.delta_list = std::move(delta_list);
        cfg.seed = seed;
        py::gil_scoped_release release;
        return sweep_csv(run_sweep(cfg));
      },
      py::arg("p"), py::arg("n_list"), py::arg("delta_list") = std::vector<double>{}, py::arg("seed") = 0);
}
