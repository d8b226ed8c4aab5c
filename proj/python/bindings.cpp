#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qcoh/errors.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/repro.hpp"
#include "qcoh/roof.hpp"
#include "qcoh/state.hpp"
#include "qcoh/transforms.hpp"

namespace py = pybind11;
using namespace qcoh;

namespace {

Ensemble make_ensemble(const std::vector<std::pair<double, PureQubit>>& members) {
  std::vector<EnsembleMember> out;
  out.reserve(members.size());
  for (const auto& [w, phi] : members) out.push_back({w, phi});
  return Ensemble(std::move(out));
}

std::vector<std::pair<double, PureQubit>> members_of(const Ensemble& e) {
  std::vector<std::pair<double, PureQubit>> out;
  for (const auto& m : e.members()) out.emplace_back(m.weight, m.state);
  return out;
}

py::object check_value(const repro::CheckValue& v) {
  if (const bool* b = std::get_if<bool>(&v)) return py::bool_(*b);
  return py::float_(std::get<double>(v));
}

}  // namespace

PYBIND11_MODULE(_qcoh, m) {
  m.doc() = "Convex-roof coherence measures of single qubits and incoherent-transformation checks";

  auto base = py::register_exception<Error>(m, "QcohError", PyExc_ValueError);
  py::register_exception<TraceRange>(m, "TraceRange", base);
  py::register_exception<NotPositive>(m, "NotPositive", base);
  py::register_exception<WeightRange>(m, "WeightRange", base);
  py::register_exception<NotNormalized>(m, "NotNormalized", base);
  py::register_exception<NonConvexMeasure>(m, "NonConvexMeasure", base);
  py::register_exception<NotIsometry>(m, "NotIsometry", base);
  py::register_exception<MuRange>(m, "MuRange", base);
  py::register_exception<BadOrdering>(m, "BadOrdering", base);
  py::register_exception<UnknownMeasure>(m, "UnknownMeasure", base);

  py::class_<PureQubit>(m, "PureQubit")
      .def(py::init<cplx, cplx>(), py::arg("c0"), py::arg("c1"))
      .def_static("normalized", &PureQubit::normalized, py::arg("c0"), py::arg("c1"))
      .def_static("zero", &PureQubit::zero)
      .def_static("one", &PureQubit::one)
      .def_static("plus", &PureQubit::plus)
      .def_property_readonly("c0", &PureQubit::c0)
      .def_property_readonly("c1", &PureQubit::c1)
      .def("off_diagonal_magnitude", &PureQubit::off_diagonal_magnitude)
      .def(py::self == py::self)
      .def("__repr__", [](const PureQubit& p) {
        std::ostringstream s;
        s << "PureQubit(" << p.c0() << ", " << p.c1() << ")";
        return s.str();
      });

  py::class_<QubitState>(m, "QubitState")
      .def_static("from_pure", &QubitState::from_pure)
      .def_property_readonly("rho00", &QubitState::rho00)
      .def_property_readonly("rho11", &QubitState::rho11)
      .def_property_readonly("rho01", &QubitState::rho01)
      .def("coherence_magnitude", &QubitState::coherence_magnitude)
      .def("swapped", &QubitState::swapped)
      .def(py::self == py::self)
      .def("__repr__", [](const QubitState& s) {
        std::ostringstream o;
        o << "QubitState(rho00=" << s.rho00() << ", rho01=" << s.rho01() << ")";
        return o.str();
      });

  py::class_<Ensemble>(m, "Ensemble")
      .def(py::init(&make_ensemble), py::arg("members"))
      .def_property_readonly("members", &members_of)
      .def("__len__", &Ensemble::size);

  py::class_<DirectSumState>(m, "DirectSumState")
      .def_readonly("p", &DirectSumState::p)
      .def_readonly("phi1", &DirectSumState::phi1)
      .def_readonly("phi2", &DirectSumState::phi2);

  m.def("validate_density", &validate_density, py::arg("rho00"), py::arg("rho01"));
  m.def("l1_coherence", &l1_coherence);
  m.def("phase_normalize", [](const QubitState& s) {
    const auto r = phase_normalize(s);
    return py::make_tuple(r.state, r.phase);
  });
  m.def("mix", &mix);
  m.def("lower_population", &lower_population);
  m.def("eigendecompose", [](const QubitState& s) {
    const auto e = eigendecompose(s);
    return py::make_tuple(e.eigenvalues, e.eigenvectors);
  });
  m.def("direct_sum", &direct_sum, py::arg("p"), py::arg("phi1"), py::arg("phi2"));

  py::class_<MeasureSpec>(m, "MeasureSpec")
      .def_static("concurrence", &MeasureSpec::concurrence)
      .def_static("formation", &MeasureSpec::formation)
      .def_static("geometric", &MeasureSpec::geometric)
      .def_static("cmax", &MeasureSpec::cmax)
      .def_static("cmu", &MeasureSpec::cmu, py::arg("mu"))
      .def_static("rank", &MeasureSpec::rank)
      .def_static("from_token", &MeasureSpec::from_token)
      .def_property_readonly("token", &MeasureSpec::token)
      .def_property_readonly("mu", &MeasureSpec::mu)
      .def_property_readonly("continuous", &MeasureSpec::continuous)
      .def_property_readonly("convex_in_m", &MeasureSpec::convex_in_m)
      .def("profile", py::overload_cast<double>(&MeasureSpec::profile, py::const_))
      .def("__repr__", [](const MeasureSpec& s) { return "MeasureSpec('" + s.token() + "')"; });

  m.def("builtin_measures", &builtin_measures);
  m.def("eval_pure", &eval_pure);
  m.def("closed_form", &closed_form);
  m.def("coherence_rank", &coherence_rank);
  m.def("convexity_probe", [](const MeasureSpec& s, int grid) {
    return std::string(to_string(convexity_probe(s, grid)));
  }, py::arg("spec"), py::arg("grid_size") = 1025);
  m.def("curve_sample", [](const MeasureSpec& s, int n) {
    std::vector<std::pair<double, double>> out;
    for (const auto& p : curve_sample(s, n)) out.emplace_back(p.c_l1, p.value);
    return out;
  });

  py::class_<RoofConfig>(m, "RoofConfig")
      .def(py::init<>())
      .def_readwrite("ensemble_sizes", &RoofConfig::ensemble_sizes)
      .def_readwrite("restarts", &RoofConfig::restarts)
      .def_readwrite("max_iters", &RoofConfig::max_iters)
      .def_readwrite("tol", &RoofConfig::tol)
      .def_readwrite("seed", &RoofConfig::seed);

  py::class_<RoofResult>(m, "RoofResult")
      .def_readonly("value", &RoofResult::value)
      .def_readonly("witness", &RoofResult::witness)
      .def_property_readonly("closed_form", [](const RoofResult& r) -> std::optional<double> {
        if (r.gap) return r.gap->closed_form;
        return std::nullopt;
      })
      .def_property_readonly("gap", [](const RoofResult& r) -> std::optional<double> {
        if (r.gap) return r.gap->difference;
        return std::nullopt;
      });

  m.def("hjw_ensemble", [](const QubitState& s, const std::vector<IsometryRow>& rows) {
    return hjw_ensemble(s, rows);
  });
  m.def("ensemble_average", &ensemble_average);
  m.def("roof_minimize", &roof_minimize, py::arg("spec"), py::arg("state"),
        py::arg("config") = RoofConfig{});

  py::class_<Theorem1Witness>(m, "Theorem1Witness")
      .def_readonly("q", &Theorem1Witness::q)
      .def_readonly("p_prime", &Theorem1Witness::p_prime)
      .def_readonly("phi1", &Theorem1Witness::phi1)
      .def_readonly("phi2", &Theorem1Witness::phi2)
      .def("ensemble", &Theorem1Witness::ensemble);
  m.def("theorem1_witness", &theorem1_witness);

  py::class_<Theorem2Witness>(m, "Theorem2Witness")
      .def_readonly("weight", &Theorem2Witness::weight)
      .def_readonly("coherent_part", &Theorem2Witness::coherent_part)
      .def_readonly("residual", &Theorem2Witness::residual)
      .def("ensemble", &Theorem2Witness::ensemble);
  m.def("theorem2_witness", &theorem2_witness);

  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("closed", &VerificationReport::closed)
      .def_readonly("oracle", &VerificationReport::oracle)
      .def_readonly("witness_value", &VerificationReport::witness_value)
      .def_readonly("passed", &VerificationReport::pass);
  m.def("verify_closed_form", &verify_closed_form, py::arg("spec"), py::arg("state"),
        py::arg("config") = RoofConfig{});

  py::class_<FeasibilityVerdict>(m, "FeasibilityVerdict")
      .def_readonly("feasible", &FeasibilityVerdict::feasible)
      .def_readonly("witness_mu", &FeasibilityVerdict::witness_mu)
      .def_readonly("lhs", &FeasibilityVerdict::lhs)
      .def_readonly("rhs", &FeasibilityVerdict::rhs);

  m.def("chitambar_monotones", [](const QubitState& s) {
    const auto c = chitambar_monotones(s);
    return py::make_tuple(c.zeta, c.xi);
  });
  m.def("qubit_transform_feasible", &qubit_transform_feasible);
  m.def("qubit_transform_verdict", &qubit_transform_verdict);
  m.def("c_mu_direct_sum", &c_mu_direct_sum);
  m.def("critical_mus", &critical_mus);
  m.def("theorem3_feasible", &theorem3_feasible);
  m.def("pure_to_pure_feasible", &pure_to_pure_feasible);
  m.def("max_conversion_probability", &max_conversion_probability, py::arg("a_source"),
        py::arg("theta"), py::arg("tau"));

  m.def("run_reproduction", [](std::uint64_t seed, int samples, int pairs) {
    repro::ReproOptions o;
    o.seed = seed;
    o.random_states = samples;
    o.direct_sum_pairs = pairs;
    py::list rows;
    for (const auto& c : repro::run_reproduction(o)) {
      py::dict d;
      d["name"] = c.name;
      d["criterion"] = c.criterion;
      d["expected"] = check_value(c.expected);
      d["computed"] = check_value(c.computed);
      d["tolerance"] = c.tolerance;
      d["pass"] = c.pass;
      rows.append(d);
    }
    return rows;
  }, py::arg("seed") = 20231, py::arg("samples") = 200, py::arg("pairs") = 1000);
}
