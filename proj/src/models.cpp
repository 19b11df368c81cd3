#include "cartanqs/models.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cmath>

namespace cartanqs {

LadderOperator jordan_wigner(int mode, bool create, int n_modes) {
  if (mode < 0 || mode >= n_modes)
    throw ModelError("mode " + std::to_string(mode) + " out of range for " +
                     std::to_string(n_modes) + " modes");
  const std::uint64_t z_tail = (1ull << mode) - 1;  // Z string on lower modes
  const std::uint64_t bit = 1ull << mode;
  PauliSum action(n_modes);
  action.add(PauliString(n_modes, bit, z_tail), 0.5);             // X_mode * tail
  action.add(PauliString(n_modes, bit, z_tail | bit),             // Y_mode * tail
             create ? cplx{0, -0.5} : cplx{0, 0.5});
  return LadderOperator{std::move(action),
                        std::string(create ? "cdag" : "c") + std::to_string(mode), create};
}

int hubbard_mode(int site, Spin spin) { return 2 * site + (spin == Spin::down ? 1 : 0); }

PauliSum build_hubbard(const FermiHubbardSpec& spec) {
  if (spec.n_sites != 2) throw ModelError("the Hubbard model is fixed at 2 sites");
  const int n_modes = 4;
  PauliSum h(n_modes);

  // Hopping t sum_sigma (a0^dag a1 + a1^dag a0).
  for (Spin s : {Spin::up, Spin::down}) {
    const int m0 = hubbard_mode(0, s), m1 = hubbard_mode(1, s);
    PauliSum hop = multiply(jordan_wigner(m0, true, n_modes).action,
                            jordan_wigner(m1, false, n_modes).action);
    hop += multiply(jordan_wigner(m1, true, n_modes).action,
                    jordan_wigner(m0, false, n_modes).action);
    h += spec.t_hop * hop;
  }

  // Interaction U (n_up - 1/2)(n_down - 1/2) per site; the single-Z pieces
  // cancel exactly in this particle-hole symmetric form.
  PauliSum half(n_modes);
  half.add(PauliString::identity(n_modes), -0.5);
  for (int site = 0; site < 2; ++site) {
    const int mu = hubbard_mode(site, Spin::up), md = hubbard_mode(site, Spin::down);
    PauliSum n_up = multiply(jordan_wigner(mu, true, n_modes).action,
                             jordan_wigner(mu, false, n_modes).action);
    PauliSum n_down = multiply(jordan_wigner(md, true, n_modes).action,
                               jordan_wigner(md, false, n_modes).action);
    h += spec.U * multiply(n_up + half, n_down + half);
  }
  return h;
}

PauliSum build_tfim(const TFIMSpec& spec) {
  if (spec.n_sites < 2) throw ModelError("TFIM needs at least 2 sites");
  if (spec.n_sites > 62) throw ModelError("TFIM chain too long for the mask representation");
  PauliSum h(spec.n_sites);
  for (int i = 0; i + 1 < spec.n_sites; ++i)
    h.add(PauliString(spec.n_sites, 0, 3ull << i), 1.0);
  for (int i = 0; i < spec.n_sites; ++i)
    h.add(PauliString(spec.n_sites, 1ull << i, 0), spec.h_x);
  return h;
}

LadderOperator momentum_op(Momentum k, Spin spin, bool create) {
  const int n_modes = 4;
  const double sign = k == Momentum::zero ? 1.0 : -1.0;
  PauliSum action = jordan_wigner(hubbard_mode(0, spin), create, n_modes).action;
  action += sign * jordan_wigner(hubbard_mode(1, spin), create, n_modes).action;
  action *= 1.0 / std::sqrt(2.0);
  std::string label = std::string(create ? "cdag_" : "c_") + (k == Momentum::zero ? "k0" : "kpi") +
                      (spin == Spin::up ? "_up" : "_down");
  return LadderOperator{std::move(action), std::move(label), create};
}

GroundState ground_state(const PauliSum& hamiltonian) {
  const int n = hamiltonian.n_qubits();
  if (n > 12) throw ModelError("dense diagonalization limited to 12 qubits");
  if (!is_real(hamiltonian)) throw ModelError("Hamiltonian coefficients must be real");
  const std::uint64_t dim = 1ull << n;

  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
  // Column b of each string: amplitude b -> b^x with the string's phase.
  for (const auto& [str, coeff] : hamiltonian.terms()) {
    static const cplx iq[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx phase = coeff * iq[str.y_count() % 4];
    for (std::uint64_t b = 0; b < dim; ++b) {
      const double sign = std::popcount(b & str.z_mask) & 1 ? -1.0 : 1.0;
      mat(b ^ str.x_mask, b) += phase * sign;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mat);
  if (solver.info() != Eigen::Success) throw ModelError("dense diagonalization failed");

  GroundState gs;
  gs.energy = solver.eigenvalues()(0);
  gs.degenerate = dim > 1 && solver.eigenvalues()(1) - solver.eigenvalues()(0) < 1e-9;
  gs.state.n_qubits = n;
  gs.state.amps.resize(dim);
  for (std::uint64_t b = 0; b < dim; ++b) gs.state.amps[b] = solver.eigenvectors()(b, 0);
  return gs;
}

}  // namespace cartanqs
