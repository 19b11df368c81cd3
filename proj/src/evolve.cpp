#include "cartanqs/evolve.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace cartanqs {

namespace {

void check_state(const StateVector& s) {
  if (s.n_qubits < 1 || s.n_qubits > 30) throw PauliError("state qubit count out of range");
  if (s.amps.size() != (1ull << s.n_qubits))
    throw PauliError("state amplitude count does not match n_qubits");
}

void check_match(int a, int b) {
  if (a != b)
    throw PauliError("mismatched qubit counts: " + std::to_string(a) + " vs " + std::to_string(b));
}

cplx y_phase(const PauliString& p) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[p.y_count() % 4];
}

}  // namespace

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  if (n_qubits < 1 || n_qubits > 30) throw PauliError("state qubit count out of range");
  if (index >= (1ull << n_qubits)) throw PauliError("basis index out of range");
  StateVector s;
  s.n_qubits = n_qubits;
  s.amps.assign(1ull << n_qubits, cplx{0, 0});
  s.amps[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  double total = 0;
  for (const cplx& a : amps) total += std::norm(a);
  return std::sqrt(total);
}

EvolutionOperator make_evolution_operator(const CartanSolution& solution) {
  const int n = solution.algebra.g_basis.empty() ? 1 : solution.algebra.g_basis.front().n_qubits;
  return EvolutionOperator{solution.k0, solution.h, n};
}

StateVector apply_string(const StateVector& state, const PauliString& p) {
  check_state(state);
  check_match(state.n_qubits, p.n_qubits);
  const cplx phase = y_phase(p);
  StateVector out;
  out.n_qubits = state.n_qubits;
  out.amps.assign(state.amps.size(), cplx{0, 0});
  for (std::uint64_t b = 0; b < state.amps.size(); ++b) {
    const double sign = std::popcount(b & p.z_mask) & 1 ? -1.0 : 1.0;
    out.amps[b ^ p.x_mask] = phase * sign * state.amps[b];
  }
  return out;
}

StateVector apply_pauli_exp(const StateVector& state, const PauliString& p, double alpha) {
  StateVector rotated = apply_string(state, p);
  const double c = std::cos(alpha), s = std::sin(alpha);
  for (std::uint64_t b = 0; b < state.amps.size(); ++b)
    rotated.amps[b] = c * state.amps[b] + cplx{0, 1} * s * rotated.amps[b];
  return rotated;
}

StateVector apply_sum(const StateVector& state, const PauliSum& a) {
  check_state(state);
  check_match(state.n_qubits, a.n_qubits());
  StateVector out;
  out.n_qubits = state.n_qubits;
  out.amps.assign(state.amps.size(), cplx{0, 0});
  for (const auto& [str, coeff] : a.terms()) {
    const cplx phase = coeff * y_phase(str);
    for (std::uint64_t b = 0; b < state.amps.size(); ++b) {
      const double sign = std::popcount(b & str.z_mask) & 1 ? -1.0 : 1.0;
      out.amps[b ^ str.x_mask] += phase * sign * state.amps[b];
    }
  }
  return out;
}

StateVector evolve(const StateVector& state, const EvolutionOperator& op, double t) {
  check_state(state);
  check_match(state.n_qubits, op.n_qubits);
  StateVector out = state;
  const auto& ks = op.k_factors.k_strings;
  const auto& thetas = op.k_factors.thetas;
  for (std::size_t i = 0; i < ks.size(); ++i)
    out = apply_pauli_exp(out, ks[i], -thetas[i]);
  for (std::size_t i = 0; i < op.h_coords.h_strings.size(); ++i)
    out = apply_pauli_exp(out, op.h_coords.h_strings[i], -op.h_coords.lambdas[i] * t);
  for (std::size_t i = ks.size(); i-- > 0;)
    out = apply_pauli_exp(out, ks[i], thetas[i]);
  return out;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  check_state(a);
  check_state(b);
  check_match(a.n_qubits, b.n_qubits);
  cplx total{0, 0};
  for (std::uint64_t i = 0; i < a.amps.size(); ++i) total += std::conj(a.amps[i]) * b.amps[i];
  return total;
}

}  // namespace cartanqs
