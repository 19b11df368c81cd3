#pragma once

#include <cstdint>
#include <vector>

#include "cartanqs/khk.hpp"
#include "cartanqs/pauli.hpp"

namespace cartanqs {

struct StateVector {
  int n_qubits = 1;
  std::vector<cplx> amps;  // 2^n amplitudes, basis index bit q = qubit q

  static StateVector basis_state(int n_qubits, std::uint64_t index);
  double norm() const;
};

// U(t) = K0 e^{-iht} K0^dag packaged for evolution and circuit emission.
struct EvolutionOperator {
  KFactorization k_factors;
  CartanCoordinates h_coords;
  int n_qubits = 1;
};

EvolutionOperator make_evolution_operator(const CartanSolution& solution);

// P|psi> for a Hermitian string: amplitude b goes to b^x with phase
// i^{|x&z|} (-1)^{popcount(b & z)}.
StateVector apply_string(const StateVector& state, const PauliString& p);

// e^{i alpha P}|psi> = cos(alpha)|psi> + i sin(alpha) P|psi>.
StateVector apply_pauli_exp(const StateVector& state, const PauliString& p, double alpha);

// sum_P c_P P |psi>.
StateVector apply_sum(const StateVector& state, const PauliSum& a);

// K0^dag first (increasing factor order, negated angles), then the commuting
// h exponentials e^{-i lambda_i t h_i}, then K0. Operation count is
// independent of t.
StateVector evolve(const StateVector& state, const EvolutionOperator& op, double t);

// <a|b> with conjugation on a.
cplx inner_product(const StateVector& a, const StateVector& b);

}  // namespace cartanqs
