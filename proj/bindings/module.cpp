#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cartanqs/circuit.hpp"
#include "cartanqs/io.hpp"
#include "cartanqs/models.hpp"
#include "cartanqs/runner.hpp"

namespace py = pybind11;
using namespace cartanqs;

namespace {

std::vector<std::pair<std::string, cplx>> sum_terms(const PauliSum& sum) {
  std::vector<std::pair<std::string, cplx>> out;
  for (const auto& [str, coeff] : sum.terms()) out.emplace_back(str.label(), coeff);
  return out;
}

CartanSolution solve(const PauliSum& hamiltonian, double grad_tol, std::uint64_t seed) {
  SolverConfig config;
  config.grad_tol = grad_tol;
  config.seed = seed;
  return decompose(hamiltonian, config);
}

GroundState gs_of(const PauliSum& hamiltonian) { return ground_state(hamiltonian); }

std::vector<cplx> hubbard_gf(double u, double t_hop, const std::string& momentum, double t_max,
                             double dt) {
  FermiHubbardSpec spec;
  spec.t_hop = t_hop;
  spec.U = u;
  const PauliSum h = build_hubbard(spec);
  const CartanSolution sol = decompose(h);
  if (!sol.converged) throw SolverError("decomposition did not converge");
  const Momentum k = momentum == "pi" ? Momentum::pi : Momentum::zero;
  const LadderOperator a = momentum_op(k, Spin::up, false);
  const GreensSeries g =
      fermionic_gf(a, a, ground_state(h), make_evolution_operator(sol), TimeGrid{t_max, dt});
  return g.values;
}

std::vector<double> spectral(const std::vector<cplx>& values, double dt, double eta,
                             double omega_min, double omega_max, double domega) {
  GreensSeries g;
  g.grid.dt = dt;
  g.grid.t_max = dt * static_cast<double>(values.size() - 1);
  g.values = values;
  return spectral_function(g, eta, OmegaGrid{omega_min, omega_max, domega}).values;
}

std::string qasm_for(const PauliSum& hamiltonian, double t) {
  const CartanSolution sol = decompose(hamiltonian);
  if (!sol.converged) throw SolverError("decomposition did not converge");
  return to_qasm(emit_circuit(make_evolution_operator(sol), t));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cartan KHK decomposition of Pauli-sum Hamiltonians";

  py::register_exception<PauliError>(m, "PauliError");

  py::class_<PauliString>(m, "PauliString")
      .def(py::init([](const std::string& label, int n_qubits) {
             return PauliString::from_label(label, n_qubits);
           }),
           py::arg("label"), py::arg("n_qubits") = 0)
      .def_readonly("n_qubits", &PauliString::n_qubits)
      .def("label", &PauliString::label)
      .def("y_count", &PauliString::y_count)
      .def("weight", &PauliString::weight)
      .def("__repr__", [](const PauliString& p) { return "PauliString('" + p.label() + "')"; });

  py::class_<PauliSum>(m, "PauliSum")
      .def(py::init<int>(), py::arg("n_qubits"))
      .def("n_qubits", &PauliSum::n_qubits)
      .def("add", [](PauliSum& s, const std::string& label,
                     cplx coeff) { s.add(PauliString::from_label(label, s.n_qubits()), coeff); })
      .def("terms", &sum_terms)
      .def("__len__", [](const PauliSum& s) { return s.terms().size(); })
      .def("__repr__", [](const PauliSum& s) { return format_pauli_sum(s); });

  py::class_<CartanSolution>(m, "CartanSolution")
      .def_readonly("relative_residual", &CartanSolution::relative_residual)
      .def_readonly("converged", &CartanSolution::converged)
      .def_property_readonly("dims",
                             [](const CartanSolution& s) {
                               return py::make_tuple(
                                   s.algebra.g_basis.size(), s.algebra.k_basis.size(),
                                   s.algebra.m_basis.size(), s.algebra.h_basis.size());
                             })
      .def_property_readonly("k_factors",
                             [](const CartanSolution& s) {
                               std::vector<std::pair<std::string, double>> out;
                               for (std::size_t i = 0; i < s.k0.k_strings.size(); ++i)
                                 out.emplace_back(s.k0.k_strings[i].label(), s.k0.thetas[i]);
                               return out;
                             })
      .def_property_readonly("h_coordinates", [](const CartanSolution& s) {
        std::vector<std::pair<std::string, double>> out;
        for (std::size_t i = 0; i < s.h.h_strings.size(); ++i)
          out.emplace_back(s.h.h_strings[i].label(), s.h.lambdas[i]);
        return out;
      });

  py::class_<GroundState>(m, "GroundState")
      .def_readonly("energy", &GroundState::energy)
      .def_readonly("degenerate", &GroundState::degenerate);

  m.def("parse_pauli_sum",
        [](const std::string& text, int n_qubits) { return parse_pauli_sum_text(text, n_qubits); },
        py::arg("text"), py::arg("n_qubits") = 0);
  m.def("format_pauli_sum", &format_pauli_sum, py::arg("sum"));
  m.def("build_hubbard",
        [](double t_hop, double u) {
          FermiHubbardSpec spec;
          spec.t_hop = t_hop;
          spec.U = u;
          return build_hubbard(spec);
        },
        py::arg("t_hop") = -1.0, py::arg("U") = 0.0);
  m.def("build_tfim",
        [](int n_sites, double h_x) {
          TFIMSpec spec;
          spec.n_sites = n_sites;
          spec.h_x = h_x;
          return build_tfim(spec);
        },
        py::arg("n_sites") = 2, py::arg("h_x") = 1.0);
  m.def("decompose", &solve, py::arg("hamiltonian"), py::arg("grad_tol") = 1e-10,
        py::arg("seed") = 12345);
  m.def("ground_state", &gs_of, py::arg("hamiltonian"));
  m.def("hubbard_gf", &hubbard_gf, py::arg("U"), py::arg("t_hop") = -1.0,
        py::arg("momentum") = "0", py::arg("t_max") = 35.0, py::arg("dt") = 0.1,
        "Diagonal retarded Green's function of the Hubbard dimer, spin up");
  m.def("spectral", &spectral, py::arg("values"), py::arg("dt"), py::arg("eta") = 0.2,
        py::arg("omega_min") = -10.0, py::arg("omega_max") = 10.0, py::arg("domega") = 0.01);
  m.def("emit_qasm", &qasm_for, py::arg("hamiltonian"), py::arg("t"));
}
