#pragma once

#include <string>

#include "cartanqs/evolve.hpp"
#include "cartanqs/pauli.hpp"

namespace cartanqs {

class ModelError : public PauliError {
 public:
  using PauliError::PauliError;
};

// Two-site Fermi-Hubbard dimer, particle-hole symmetric form
// H = t sum_sigma (a0s^dag a1s + h.c.) + U sum_i (n_iu - 1/2)(n_id - 1/2).
struct FermiHubbardSpec {
  int n_sites = 2;  // fixed at 2
  double t_hop = -1.0;
  double U = 0.0;
};

// Open-boundary transverse-field Ising chain
// H = sum_i Z_i Z_{i+1} + h_x sum_i X_i.
struct TFIMSpec {
  int n_sites = 2;
  double h_x = 1.0;
};

enum class Spin { up, down };
enum class Momentum { zero, pi };

struct LadderOperator {
  PauliSum action;
  std::string label;
  bool create = false;
};

// c_mode / c_mode^dag under Jordan-Wigner: Q on the mode qubit, Z string on
// all lower-index qubits; Q^dag = (X - iY)/2, Q = (X + iY)/2.
LadderOperator jordan_wigner(int mode, bool create, int n_modes);

// Qubit ordering (site i, up) -> mode 2i, (site i, down) -> mode 2i+1.
int hubbard_mode(int site, Spin spin);

PauliSum build_hubbard(const FermiHubbardSpec& spec);
PauliSum build_tfim(const TFIMSpec& spec);

// Momentum-space dimer operators c_{k,sigma} = (a_{0,sigma} +- a_{1,sigma})/sqrt(2),
// plus sign for k=0, minus for k=pi.
LadderOperator momentum_op(Momentum k, Spin spin, bool create);

struct GroundState {
  double energy = 0;
  StateVector state;
  bool degenerate = false;  // second eigenvalue within 1e-9 of the first
};

// Lowest eigenpair by dense diagonalization; n_qubits <= 12.
GroundState ground_state(const PauliSum& hamiltonian);

}  // namespace cartanqs
