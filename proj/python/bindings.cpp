#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/complex.h>

#include "tidaleq/acceptance.hpp"
#include "tidaleq/coeffs.hpp"
#include "tidaleq/errors.hpp"
#include "tidaleq/linop.hpp"
#include "tidaleq/residual.hpp"

namespace py = pybind11;
using namespace tidaleq;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rotating fluid equilibria perturbed by a point mass";

  static py::exception<Error> error(m, "Error");
  static py::exception<ConfigError> config_error(m, "ConfigError", error.ptr());
  static py::exception<ResonanceError> resonance_error(m, "ResonanceError", error.ptr());
  static py::exception<DivergenceError> divergence_error(m, "DivergenceError", error.ptr());
  static py::exception<QuadratureError> quadrature_error(m, "QuadratureError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ResonanceError& e) {
      py::set_error(resonance_error, e.what());
    } catch (const DivergenceError& e) {
      py::set_error(divergence_error, e.what());
    } catch (const QuadratureError& e) {
      py::set_error(quadrature_error, e.what());
    } catch (const ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const DomainError& e) {
      py::set_error(PyExc_ValueError, e.what());
    } catch (const DegenerateBaseError& e) {
      py::set_error(PyExc_ValueError, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<InteractionCase>(m, "InteractionCase")
      .def_static("power", &InteractionCase::power, py::arg("nu"))
      .def_static("log", &InteractionCase::log)
      .def_property_readonly("is_log", &InteractionCase::is_log)
      .def_readonly("nu", &InteractionCase::nu)
      .def("__repr__", [](const InteractionCase& c) { return "InteractionCase(" + c.label() + ")"; });

  py::class_<VorticityProfile>(m, "VorticityProfile")
      .def("__call__", &VorticityProfile::eval)
      .def("d1", &VorticityProfile::d1)
      .def_property_readonly("name", &VorticityProfile::name);
  m.def("rigid_preset", &rigid_preset, py::arg("omega0"));
  m.def("affine_preset", &affine_preset, py::arg("offset"), py::arg("slope"));
  m.def("tabulated_profile", &tabulated_profile, py::arg("u"), py::arg("g"));

  m.def("u0", &u0);
  m.def("u0_d1", &u0_d1);
  m.def("u0_d2", &u0_d2);
  m.def("omega_from_a0", &omega_from_a0);
  m.def("a0_from_omega", &a0_from_omega, py::arg("case"), py::arg("omega0"), py::arg("a_min") = 2.0);
  m.def("c_n", &c_n);
  m.def("gamma0", &gamma0);

  py::class_<BaseState>(m, "BaseState")
      .def_readonly("omega0", &BaseState::omega0)
      .def_readonly("a0", &BaseState::a0)
      .def_readonly("lambda0", &BaseState::lambda0)
      .def_readonly("dphi0_at_1", &BaseState::dphi0_at_1)
      .def_property_readonly("phi0_r", [](const BaseState& b) { return b.phi0.nodes; })
      .def_property_readonly("phi0", [](const BaseState& b) { return b.phi0.values; });
  m.def("make_base_state",
        [](const InteractionCase& c, double a0, const VorticityProfile& G, int radial_nodes, double a_min) {
          return make_base_state(c, a0, G, BaseOptions{radial_nodes, a_min});
        },
        py::arg("case"), py::arg("a0"), py::arg("G"), py::arg("radial_nodes") = 128, py::arg("a_min") = 2.0);

  py::class_<ModeTable>(m, "ModeTable")
      .def_readonly("N", &ModeTable::N)
      .def_readonly("a_deriv", &ModeTable::a_deriv)
      .def_readonly("c", &ModeTable::c)
      .def_readonly("omega", &ModeTable::omega);
  m.def("build_mode_table", &build_mode_table, py::arg("base"), py::arg("N"));

  py::class_<ShapeCoeffs>(m, "ShapeCoeffs")
      .def(py::init<int>(), py::arg("N"))
      .def_property_readonly("N", &ShapeCoeffs::N)
      .def_property("g0", &ShapeCoeffs::g0, &ShapeCoeffs::set_g0)
      .def("coeff", &ShapeCoeffs::coeff)
      .def("set", &ShapeCoeffs::set)
      .def("coefficients", [](const ShapeCoeffs& h) {
        std::vector<cplx> v;
        for (int n = 0; n <= h.N(); ++n) v.push_back(h.coeff(n));
        return v;
      });
  m.def("area", &area);
  m.def("injectivity_margin", &injectivity_margin, py::arg("h"), py::arg("M") = 0);
  m.def("boundary", [](const ShapeCoeffs& h, int M) { return eval_circle(h, M, 1.0).f; });

  py::class_<ScanReport>(m, "ScanReport")
      .def_readonly("min_abs_omega", &ScanReport::min_abs_omega)
      .def_readonly("argmin_n", &ScanReport::argmin_n)
      .def_readonly("tail_certified_from", &ScanReport::tail_certified_from)
      .def_readonly("resonances", &ScanReport::resonances);

  py::class_<LinearizedOperator>(m, "LinearizedOperator")
      .def_property_readonly("N", &LinearizedOperator::N)
      .def_readonly("particle_diag", &LinearizedOperator::particle_diag)
      .def_readonly("table", &LinearizedOperator::table)
      .def("W", &LinearizedOperator::W)
      .def("scan", [](const LinearizedOperator& op, double margin) { return nonresonance_scan(op, margin); },
           py::arg("margin_factor") = 2.0);
  m.def("assemble_operator", [](const BaseState& b, int N) { return assemble_operator(b, build_mode_table(b, N)); },
        py::arg("base"), py::arg("N") = 256);

  py::class_<FirstOrder>(m, "FirstOrder")
      .def_readonly("h1", &FirstOrder::h1)
      .def_readonly("a1", &FirstOrder::a1)
      .def_readonly("lambda1", &FirstOrder::lambda1);
  m.def("first_order_response", &first_order_response, py::arg("op"), py::arg("m"), py::arg("M") = 0);

  py::class_<Diagnostics>(m, "Diagnostics")
      .def_readonly("area_error", &Diagnostics::area_error)
      .def_readonly("center_of_mass", &Diagnostics::center_of_mass)
      .def_readonly("symmetry_defect", &Diagnostics::symmetry_defect)
      .def_readonly("injectivity_margin", &Diagnostics::injectivity_margin)
      .def_readonly("pressure_jump_sup", &Diagnostics::pressure_jump_sup);
  py::class_<EquilibriumSolution>(m, "EquilibriumSolution")
      .def_readonly("h", &EquilibriumSolution::h)
      .def_readonly("a", &EquilibriumSolution::a)
      .def_readonly("lambda_", &EquilibriumSolution::lambda)
      .def_readonly("m", &EquilibriumSolution::m)
      .def_readonly("residual_norm", &EquilibriumSolution::residual_norm)
      .def_readonly("iterations", &EquilibriumSolution::iterations)
      .def_readonly("diagnostics", &EquilibriumSolution::diagnostics);
  m.def("quasi_newton_solve",
        [](const LinearizedOperator& op, double mass, double tol, int max_iterations, double m_cap) {
          SolveOptions so;
          so.tol = tol;
          so.max_iterations = max_iterations;
          so.m_cap = m_cap;
          py::gil_scoped_release release;
          return quasi_newton_solve(op, mass, so);
        },
        py::arg("op"), py::arg("m"), py::arg("tol") = 1e-8, py::arg("max_iterations") = 50, py::arg("m_cap") = -1.0);

  py::class_<CriterionResult>(m, "CriterionResult")
      .def_readonly("id", &CriterionResult::id)
      .def_readonly("title", &CriterionResult::title)
      .def_readonly("passed", &CriterionResult::pass)
      .def_readonly("detail", &CriterionResult::detail)
      .def_readonly("metrics", &CriterionResult::metrics);
  m.def("run_criterion", [](int id) { return run_criterion(id, AcceptanceOptions{}); }, py::arg("id"));
}
