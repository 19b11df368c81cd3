#include "cartanqs/circuit.hpp"

#include <algorithm>
#include <cstdio>

namespace cartanqs {

namespace {

void append_pauli_exp(QuantumCircuit& circuit, const PauliString& p, double alpha) {
  std::vector<int> active;
  for (int q = 0; q < p.n_qubits; ++q)
    if (p.axis(q) != 'I') active.push_back(q);
  if (active.empty()) return;  // e^{i alpha I} is a global phase

  auto& gates = circuit.gates;
  for (int q : active) {
    const char a = p.axis(q);
    if (a == 'X') {
      gates.push_back({Gate::Kind::h, q});
    } else if (a == 'Y') {
      gates.push_back({Gate::Kind::sdg, q});
      gates.push_back({Gate::Kind::h, q});
    }
  }
  for (std::size_t i = 0; i + 1 < active.size(); ++i)
    gates.push_back({Gate::Kind::cx, active[i], active[i + 1]});
  gates.push_back({Gate::Kind::rz, active.back(), -1, -2 * alpha});
  for (std::size_t i = active.size() - 1; i-- > 0;)
    gates.push_back({Gate::Kind::cx, active[i], active[i + 1]});
  for (auto it = active.rbegin(); it != active.rend(); ++it) {
    const char a = p.axis(*it);
    if (a == 'X') {
      gates.push_back({Gate::Kind::h, *it});
    } else if (a == 'Y') {
      gates.push_back({Gate::Kind::h, *it});
      gates.push_back({Gate::Kind::s, *it});
    }
  }
}

}  // namespace

int QuantumCircuit::depth() const {
  std::vector<int> layer(n_qubits, 0);
  int depth = 0;
  for (const Gate& g : gates) {
    int at = layer[g.q0];
    if (g.kind == Gate::Kind::cx) at = std::max(at, layer[g.q1]);
    ++at;
    layer[g.q0] = at;
    if (g.kind == Gate::Kind::cx) layer[g.q1] = at;
    depth = std::max(depth, at);
  }
  return depth;
}

QuantumCircuit emit_circuit(const EvolutionOperator& op, double t) {
  QuantumCircuit circuit;
  circuit.n_qubits = op.n_qubits;
  const auto& ks = op.k_factors.k_strings;
  const auto& thetas = op.k_factors.thetas;
  for (std::size_t i = 0; i < ks.size(); ++i)
    append_pauli_exp(circuit, ks[i], -thetas[i]);
  for (std::size_t i = 0; i < op.h_coords.h_strings.size(); ++i)
    append_pauli_exp(circuit, op.h_coords.h_strings[i], -op.h_coords.lambdas[i] * t);
  for (std::size_t i = ks.size(); i-- > 0;)
    append_pauli_exp(circuit, ks[i], thetas[i]);
  return circuit;
}

std::string to_qasm(const QuantumCircuit& circuit) {
  std::string out;
  out += "OPENQASM 2.0;\n";
  out += "include \"qelib1.inc\";\n";
  out += "qreg q[" + std::to_string(circuit.n_qubits) + "];\n";
  char buf[64];
  for (const Gate& g : circuit.gates) {
    switch (g.kind) {
      case Gate::Kind::h:
        out += "h q[" + std::to_string(g.q0) + "];\n";
        break;
      case Gate::Kind::s:
        out += "s q[" + std::to_string(g.q0) + "];\n";
        break;
      case Gate::Kind::sdg:
        out += "sdg q[" + std::to_string(g.q0) + "];\n";
        break;
      case Gate::Kind::cx:
        out += "cx q[" + std::to_string(g.q0) + "],q[" + std::to_string(g.q1) + "];\n";
        break;
      case Gate::Kind::rz:
        std::snprintf(buf, sizeof buf, "%.17g", g.angle);
        out += "rz(" + std::string(buf) + ") q[" + std::to_string(g.q0) + "];\n";
        break;
    }
  }
  out += "// gates=" + std::to_string(circuit.gate_count()) +
         " depth=" + std::to_string(circuit.depth()) + "\n";
  return out;
}

}  // namespace cartanqs
