#include "cartanqs/greens.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace cartanqs {

namespace {

constexpr cplx kImag{0, 1};

cplx phase_exp(double angle) { return {std::cos(angle), std::sin(angle)}; }

Eigen::MatrixXcd to_dense(const PauliSum& a) {
  const std::uint64_t dim = 1ull << a.n_qubits();
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
  static const cplx iq[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& [str, coeff] : a.terms()) {
    const cplx phase = coeff * iq[str.y_count() % 4];
    for (std::uint64_t b = 0; b < dim; ++b) {
      const double sign = std::popcount(b & str.z_mask) & 1 ? -1.0 : 1.0;
      mat(b ^ str.x_mask, b) += phase * sign;
    }
  }
  return mat;
}

}  // namespace

void TimeGrid::validate() const {
  if (!(dt > 0)) throw GridError("dt must be positive");
  if (!(t_max >= 0)) throw GridError("t_max must be non-negative");
  const double steps = t_max / dt;
  if (std::abs(steps - std::llround(steps)) > 1e-9)
    throw GridError("t_max must be an integer multiple of dt");
}

std::size_t TimeGrid::n_samples() const {
  validate();
  return static_cast<std::size_t>(std::llround(t_max / dt)) + 1;
}

void OmegaGrid::validate() const {
  if (!(domega > 0)) throw GridError("domega must be positive");
  if (!(omega_max > omega_min)) throw GridError("omega_max must exceed omega_min");
}

std::size_t OmegaGrid::n_samples() const {
  validate();
  return static_cast<std::size_t>(std::floor((omega_max - omega_min) / domega + 1e-9)) + 1;
}

GreensSeries fermionic_gf(const LadderOperator& a, const LadderOperator& b,
                          const GroundState& gs, const EvolutionOperator& op,
                          const TimeGrid& grid) {
  if (a.create || b.create)
    throw ModelError("fermionic_gf expects annihilation operators; daggers are formed internally");
  grid.validate();

  const PauliSum a_dag = adjoint(a.action);
  const PauliSum b_dag = adjoint(b.action);
  const StateVector ket_particle = apply_sum(gs.state, b_dag);  // c_b^dag |Psi>
  const StateVector bra_particle = apply_sum(gs.state, a_dag);  // c_a^dag |Psi>
  const StateVector bra_hole = apply_sum(gs.state, b.action);   // c_b |Psi>
  const StateVector ket_hole = apply_sum(gs.state, a.action);   // c_a |Psi>

  GreensSeries series;
  series.grid = grid;
  series.label = a.label == b.label ? a.label : a.label + "_" + b.label;
  series.values.assign(grid.n_samples(), cplx{0, 0});
  if (gs.degenerate)
    series.warnings.push_back("degenerate ground state: Green's function assumes a unique ground state");
  if (ket_particle.norm() < 1e-12 && ket_hole.norm() < 1e-12) {
    series.warnings.push_back("both excitation sectors vanish; series is identically zero");
    return series;
  }

  for (std::size_t j = 0; j < series.values.size(); ++j) {
    const double t = grid.t(j);
    const cplx term1 =
        -kImag * phase_exp(gs.energy * t) * inner_product(bra_particle, evolve(ket_particle, op, t));
    const cplx term2 =
        -kImag * phase_exp(-gs.energy * t) * inner_product(bra_hole, evolve(ket_hole, op, -t));
    series.values[j] = term1 + term2;
  }
  return series;
}

GreensSeries spin_correlator_gf(int n_sites, const GroundState& gs, const EvolutionOperator& op,
                                const TimeGrid& grid) {
  if (n_sites < 1 || n_sites != gs.state.n_qubits)
    throw ModelError("site count does not match the ground state");
  grid.validate();

  const StateVector z0_psi = apply_string(gs.state, PauliString(n_sites, 0, 1));
  std::vector<StateVector> zi_psi;
  zi_psi.reserve(n_sites);
  for (int i = 0; i < n_sites; ++i)
    zi_psi.push_back(apply_string(gs.state, PauliString(n_sites, 0, 1ull << i)));

  GreensSeries series;
  series.grid = grid;
  series.label = "site_avg";
  series.values.assign(grid.n_samples(), cplx{0, 0});
  if (gs.degenerate)
    series.warnings.push_back("degenerate ground state: Green's function assumes a unique ground state");

  for (std::size_t j = 0; j < series.values.size(); ++j) {
    const double t = grid.t(j);
    const StateVector evolved = evolve(z0_psi, op, t);
    const cplx phase = phase_exp(gs.energy * t);
    double total = 0;
    for (int i = 0; i < n_sites; ++i)
      total += 2.0 * (phase * inner_product(zi_psi[i], evolved)).imag();
    series.values[j] = total / n_sites;
  }
  return series;
}

SpectralSeries spectral_function(const GreensSeries& g, double eta, const OmegaGrid& grid) {
  if (!(eta > 0)) throw GridError("eta must be positive");
  grid.validate();

  const std::size_t nt = g.values.size();
  const double dt = g.grid.dt;
  std::vector<cplx> damped(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    const double w = (j == 0 || j + 1 == nt) ? 0.5 : 1.0;  // trapezoid weights
    damped[j] = w * std::exp(-eta * g.grid.t(j)) * g.values[j];
  }

  SpectralSeries out;
  out.grid = grid;
  out.eta = eta;
  out.label = g.label;
  out.values.assign(grid.n_samples(), 0.0);
  for (std::size_t m = 0; m < out.values.size(); ++m) {
    const double omega = grid.omega(m);
    cplx acc{0, 0};
    for (std::size_t j = 0; j < nt; ++j) acc += phase_exp(omega * g.grid.t(j)) * damped[j];
    out.values[m] = -(acc * dt).imag() / std::numbers::pi;
  }
  return out;
}

SpectralSeries lehmann_reference(const PauliSum& hamiltonian, const LadderOperator& a,
                                 const LadderOperator& b, double eta, const OmegaGrid& grid,
                                 int statistics_sign) {
  if (hamiltonian.n_qubits() > 12) throw ModelError("dense diagonalization limited to 12 qubits");
  if (!(eta > 0)) throw GridError("eta must be positive");
  if (statistics_sign != 1 && statistics_sign != -1)
    throw ModelError("statistics_sign must be +1 (fermion) or -1 (spin)");
  grid.validate();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense(hamiltonian));
  if (solver.info() != Eigen::Success) throw ModelError("dense diagonalization failed");
  const auto& energies = solver.eigenvalues();
  const Eigen::MatrixXcd& vectors = solver.eigenvectors();
  const Eigen::VectorXcd ground = vectors.col(0);
  const double e_g = energies(0);

  const Eigen::MatrixXcd a_mat = to_dense(a.action);
  const Eigen::MatrixXcd b_mat = to_dense(b.action);
  // w1_m = <Psi|A|m><m|B^dag|Psi> for poles at +(E_m - E_g),
  // w2_m = <Psi|B^dag|m><m|A|Psi> for poles at -(E_m - E_g).
  const Eigen::RowVectorXcd a_row = ground.adjoint() * a_mat * vectors;
  const Eigen::VectorXcd bdag_col = vectors.adjoint() * (b_mat.adjoint() * ground);
  const Eigen::RowVectorXcd bdag_row = ground.adjoint() * b_mat.adjoint() * vectors;
  const Eigen::VectorXcd a_col = vectors.adjoint() * (a_mat * ground);

  SpectralSeries out;
  out.grid = grid;
  out.eta = eta;
  out.label = a.label == b.label ? a.label : a.label + "_" + b.label;
  out.values.assign(grid.n_samples(), 0.0);
  for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
    const double omega = grid.omega(idx);
    cplx gt{0, 0};
    for (Eigen::Index m = 0; m < energies.size(); ++m) {
      const double gap = energies(m) - e_g;
      gt += a_row(m) * bdag_col(m) / (cplx{omega, eta} - gap);
      gt += static_cast<double>(statistics_sign) * bdag_row(m) * a_col(m) /
            (cplx{omega, eta} + gap);
    }
    out.values[idx] = -gt.imag() / std::numbers::pi;
  }
  return out;
}

std::vector<std::pair<double, double>> dominant_peaks(const SpectralSeries& a,
                                                      double rel_threshold) {
  double global_max = 0;
  for (double v : a.values) global_max = std::max(global_max, v);
  std::vector<std::pair<double, double>> peaks;
  for (std::size_t m = 1; m + 1 < a.values.size(); ++m)
    if (a.values[m] > a.values[m - 1] && a.values[m] > a.values[m + 1] &&
        a.values[m] > rel_threshold * global_max)
      peaks.emplace_back(a.grid.omega(m), a.values[m]);
  return peaks;
}

}  // namespace cartanqs
