#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "etstab/approx.hpp"
#include "etstab/charfn.hpp"
#include "etstab/io.hpp"
#include "etstab/limits.hpp"
#include "etstab/measures.hpp"
#include "etstab/simulate.hpp"
#include "etstab/special.hpp"

namespace py = pybind11;
using namespace etstab;

namespace {

AtomicMeasure measure_from_tuples(
    int dimension, const std::vector<std::tuple<double, Eigen::VectorXd, double>>& atoms) {
  std::vector<WeightedAtom> parsed;
  parsed.reserve(atoms.size());
  for (const auto& [radius, direction, weight] : atoms) {
    parsed.push_back({DirPoint{radius, direction}, weight});
  }
  return AtomicMeasure(dimension, std::move(parsed));
}

}  // namespace

PYBIND11_MODULE(_etstab, m) {
  m.doc() = "extended tempered stable distributions: measures, exponents, limits, sampling";

  m.attr("inf") = kInf;

  py::register_exception<QuadratureFailure>(m, "QuadratureFailure");
  py::register_exception<DivergentIntegral>(m, "DivergentIntegral");
  py::register_exception<StableExponentOutOfRange>(m, "StableExponentOutOfRange");
  py::register_exception<InfiniteRadiusAtom>(m, "InfiniteRadiusAtom");
  py::register_exception<StablePartForbidden>(m, "StablePartForbidden");
  py::register_exception<ParameterMismatch>(m, "ParameterMismatch");
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch");
  py::register_exception<NotPSD>(m, "NotPSD");

  py::class_<QuadratureConfig>(m, "QuadratureConfig")
      .def(py::init<>())
      .def_readwrite("abs_tol", &QuadratureConfig::abs_tol)
      .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
      .def_readwrite("max_subdivisions", &QuadratureConfig::max_subdivisions);

  py::class_<AtomicMeasure>(m, "AtomicMeasure")
      .def(py::init<int>(), py::arg("dimension"))
      .def(py::init(&measure_from_tuples), py::arg("dimension"), py::arg("atoms"),
           "atoms: list of (radius, direction, weight); radius may be inf")
      .def_property_readonly("dimension", &AtomicMeasure::dimension)
      .def("atoms",
           [](const AtomicMeasure& self) {
             std::vector<std::tuple<double, Eigen::VectorXd, double>> out;
             for (const auto& atom : self.atoms()) {
               out.emplace_back(atom.point.radius, atom.point.direction, atom.weight);
             }
             return out;
           })
      .def("total_mass", &AtomicMeasure::total_mass)
      .def("mass_within", &AtomicMeasure::mass_within)
      .def("mass_at_infinity", &AtomicMeasure::mass_at_infinity)
      .def("__len__", &AtomicMeasure::size)
      .def("__add__", &AtomicMeasure::operator+)
      .def("to_json", [](const AtomicMeasure& self) { return to_json(self).dump(); });
  m.def("measure_from_json",
        [](const std::string& text) { return measure_from_json(Json::parse(text)); });

  py::class_<TemperingSpec>(m, "TemperingSpec")
      .def(py::init([](int dimension,
                       const std::vector<std::tuple<Eigen::VectorXd, double,
                                                    std::vector<std::pair<double, double>>>>&
                           entries) {
             std::vector<TemperingEntry> parsed;
             for (const auto& [direction, sigma_weight, q_atoms] : entries) {
               TemperingEntry entry;
               entry.direction = direction;
               entry.sigma_weight = sigma_weight;
               for (const auto& [s, w] : q_atoms) entry.q_atoms.push_back({s, w});
               parsed.push_back(std::move(entry));
             }
             return TemperingSpec(dimension, std::move(parsed));
           }),
           py::arg("dimension"), py::arg("entries"),
           "entries: list of (direction, sigma_weight, [(s, weight), ...])")
      .def_property_readonly("dimension", &TemperingSpec::dimension)
      .def("to_json", [](const TemperingSpec& self) { return to_json(self).dump(); });
  m.def("tempering_from_json",
        [](const std::string& text) { return tempering_from_json(Json::parse(text)); });

  py::class_<EtsSpec>(m, "EtsSpec")
      .def(py::init<double, double, Eigen::MatrixXd, AtomicMeasure, Eigen::VectorXd>(),
           py::arg("alpha"), py::arg("p"), py::arg("gaussian"), py::arg("nu"), py::arg("shift"))
      .def_property_readonly("alpha", &EtsSpec::alpha)
      .def_property_readonly("p", &EtsSpec::p)
      .def_property_readonly("gaussian", &EtsSpec::gaussian)
      .def_property_readonly("nu", &EtsSpec::nu)
      .def_property_readonly("shift", &EtsSpec::shift)
      .def_property_readonly("dimension", &EtsSpec::dimension)
      .def("to_json", [](const EtsSpec& self) { return to_json(self).dump(); });
  m.def("ets_from_json", [](const std::string& text) { return ets_from_json(Json::parse(text)); });

  py::class_<CfGrid>(m, "CfGrid")
      .def(py::init([](const std::vector<Eigen::VectorXd>& points) {
             CfGrid grid{points};
             grid.validate();
             return grid;
           }),
           py::arg("points"))
      .def_static("default_grid", &CfGrid::default_grid)
      .def_readonly("points", &CfGrid::points);

  py::class_<ElementaryComponent>(m, "ElementaryComponent")
      .def(py::init([](double c, Eigen::VectorXd x, double b_scalar) {
             return ElementaryComponent{c, std::move(x), b_scalar};
           }),
           py::arg("c"), py::arg("x"), py::arg("b_scalar") = 0.0)
      .def_readonly("c", &ElementaryComponent::c)
      .def_readonly("x", &ElementaryComponent::x)
      .def_readonly("b_scalar", &ElementaryComponent::b_scalar);

  py::class_<SamplerConfig>(m, "SamplerConfig")
      .def(py::init<>())
      .def_readwrite("seed", &SamplerConfig::seed)
      .def_readwrite("truncation_tau", &SamplerConfig::truncation_tau)
      .def_readwrite("n_paths", &SamplerConfig::n_paths);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("valid", &ValidationReport::valid)
      .def_readonly("mass_functional", &ValidationReport::mass_functional)
      .def_readonly("head_mass", &ValidationReport::head_mass)
      .def_readonly("tail_mass", &ValidationReport::tail_mass)
      .def_readonly("atom_count", &ValidationReport::atom_count)
      .def_readonly("regime", &ValidationReport::regime)
      .def_readonly("message", &ValidationReport::message);

  py::class_<ConvergenceReport>(m, "ConvergenceReport")
      .def_readonly("epsilons", &ConvergenceReport::epsilons)
      .def_readonly("shift_gaps", &ConvergenceReport::shift_gaps)
      .def_readonly("vague_distances", &ConvergenceReport::vague_distances)
      .def_readonly("small_ball_masses", &ConvergenceReport::small_ball_masses)
      .def_readonly("tail_radii", &ConvergenceReport::tail_radii)
      .def_readonly("rosinski_tail_functionals", &ConvergenceReport::rosinski_tail_functionals)
      .def_readonly("verdict_notes", &ConvergenceReport::verdict_notes)
      .def("gaussian_gap",
           [](const ConvergenceReport& self, int n_index, double epsilon) {
             for (const auto& entry : self.gaussian_matrices) {
               if (entry.sequence_index == n_index && entry.epsilon == epsilon) {
                 return entry.gap_to_target;
               }
             }
             throw std::out_of_range("no matrix entry for this (n, epsilon)");
           })
      .def("to_json", [](const ConvergenceReport& self) { return to_json(self).dump(); });

  // numerical kernels
  m.def("tempered_power_integral", &tempered_power_integral, py::arg("alpha"), py::arg("p"),
        py::arg("lo"), py::arg("hi"), py::arg("k"), py::arg("cfg") = QuadratureConfig{});
  m.def("truncated_gauss_kernel", &truncated_gauss_kernel, py::arg("alpha"), py::arg("p"),
        py::arg("a"), py::arg("cfg") = QuadratureConfig{});
  m.def("levy_oscillatory_integral", &levy_oscillatory_integral, py::arg("s"), py::arg("alpha"),
        py::arg("p"), py::arg("rho"), py::arg("cfg") = QuadratureConfig{});
  m.def(
      "cosine_bound_check",
      [](double s, double alpha, double p, const QuadratureConfig& cfg) {
        const auto cb = cosine_bound_check(s, alpha, p, cfg);
        return std::make_pair(cb.lhs, cb.rhs);
      },
      py::arg("s"), py::arg("alpha"), py::arg("p"), py::arg("cfg") = QuadratureConfig{});
  m.def("centering_shift_integral", &centering_shift_integral, py::arg("alpha"), py::arg("p"),
        py::arg("rho"), py::arg("cfg") = QuadratureConfig{});

  // measure transforms
  m.def("validate_rosinski", &validate_rosinski, py::arg("rosinski"), py::arg("alpha"));
  m.def("rosinski_to_extended",
        py::overload_cast<const AtomicMeasure&, const AtomicMeasure&, double>(
            &rosinski_to_extended),
        py::arg("rosinski"), py::arg("stable_part"), py::arg("alpha"));
  m.def("rosinski_to_extended",
        py::overload_cast<const AtomicMeasure&, double>(&rosinski_to_extended),
        py::arg("rosinski"), py::arg("alpha"));
  m.def("extended_to_rosinski", &extended_to_rosinski, py::arg("nu"), py::arg("alpha"));
  m.def("tempering_to_rosinski", &tempering_to_rosinski, py::arg("spec"), py::arg("alpha"),
        py::arg("p"));
  m.def("levy_integral", &levy_integral, py::arg("f"), py::arg("nu"), py::arg("alpha"),
        py::arg("p"), py::arg("cfg") = QuadratureConfig{});
  m.def("levy_tail_mass", &levy_tail_mass, py::arg("nu"), py::arg("alpha"), py::arg("p"),
        py::arg("r"), py::arg("cfg") = QuadratureConfig{});

  // characteristic exponents
  m.def("char_exponent", &char_exponent, py::arg("spec"), py::arg("z"),
        py::arg("cfg") = QuadratureConfig{});
  m.def("convolve", &convolve, py::arg("lhs"), py::arg("rhs"));
  m.def("cf_sup_distance", &cf_sup_distance, py::arg("lhs"), py::arg("rhs"), py::arg("grid"),
        py::arg("cfg") = QuadratureConfig{});

  // limit diagnostics
  m.def("h_epsilon_matrix", &h_epsilon_matrix, py::arg("nu"), py::arg("alpha"), py::arg("p"),
        py::arg("epsilon"), py::arg("cfg") = QuadratureConfig{});
  m.def("vague_distance", &vague_distance, py::arg("nu1"), py::arg("nu2"), py::arg("delta"));
  m.def("no_gauss_diagnostic", &no_gauss_diagnostic, py::arg("seq"), py::arg("epsilons"));
  m.def("check_limit_conditions", &check_limit_conditions, py::arg("seq"), py::arg("target"),
        py::arg("epsilons") = default_epsilons(), py::arg("delta") = kDefaultVagueDelta,
        py::arg("cfg") = QuadratureConfig{});

  // constructive approximation
  m.def("discretize_extended_measure", &discretize_extended_measure, py::arg("nu"), py::arg("n"),
        py::arg("alpha"), py::arg("p"));
  m.def("to_elementary_sum", &to_elementary_sum, py::arg("nu_finite"), py::arg("alpha"),
        py::arg("p"), py::arg("shift"));
  m.def("elementary_sum_shift", &elementary_sum_shift, py::arg("components"), py::arg("alpha"),
        py::arg("p"), py::arg("shift"), py::arg("cfg") = QuadratureConfig{});
  m.def("gaussian_seed_sequence", &gaussian_seed_sequence, py::arg("a"), py::arg("n"),
        py::arg("alpha"), py::arg("p"), py::arg("m_nodes"), py::arg("cfg") = QuadratureConfig{});
  m.def("stable_seed_sequence", &stable_seed_sequence, py::arg("sigma"), py::arg("alpha"),
        py::arg("n"), py::arg("p"), py::arg("m_nodes"));

  // sampling
  m.def("sample_elementary", &sample_elementary, py::arg("component"), py::arg("alpha"),
        py::arg("p"), py::arg("cfg"), py::arg("qcfg") = QuadratureConfig{});
  m.def("sample_elementary_paths", &sample_elementary_paths, py::arg("component"),
        py::arg("alpha"), py::arg("p"), py::arg("cfg"), py::arg("qcfg") = QuadratureConfig{});
  m.def("sample_ets", &sample_ets, py::arg("spec"), py::arg("cfg"),
        py::arg("qcfg") = QuadratureConfig{});
  m.def("empirical_cf", &empirical_cf, py::arg("samples"), py::arg("grid"));
}
