#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cartanqs/evolve.hpp"

namespace cartanqs {

struct Gate {
  enum class Kind { h, s, sdg, cx, rz };
  Kind kind;
  int q0;            // target (single-qubit gates) or control (cx)
  int q1 = -1;       // cx target
  double angle = 0;  // rz only
};

struct QuantumCircuit {
  int n_qubits = 1;
  std::vector<Gate> gates;

  std::size_t gate_count() const { return gates.size(); }
  // ASAP-schedule depth: each gate lands one layer after the deepest qubit
  // it touches.
  int depth() const;
};

// Circuit for U(t) = K0 e^{-iht} K0^dag, factor by factor. Each e^{i alpha P}
// compiles to basis changes (H for X, S^dag then H for Y), a CX ladder onto
// the last active qubit, RZ(-2 alpha), and the unwinding. Gate count and
// depth depend only on the decomposition, never on t.
QuantumCircuit emit_circuit(const EvolutionOperator& op, double t);

// OpenQASM 2.0 text with a trailing gate-count/depth comment line.
std::string to_qasm(const QuantumCircuit& circuit);

}  // namespace cartanqs
