#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cartanqs/evolve.hpp"
#include "cartanqs/models.hpp"

namespace cartanqs {

class GridError : public PauliError {
 public:
  using PauliError::PauliError;
};

// Uniform time grid t_j = j * dt, j = 0..t_max/dt. t_max = 0 degenerates to
// the single sample t = 0.
struct TimeGrid {
  double t_max = 35.0;
  double dt = 0.1;

  void validate() const;
  std::size_t n_samples() const;
  double t(std::size_t j) const { return static_cast<double>(j) * dt; }
};

struct OmegaGrid {
  double omega_min = -10.0;
  double omega_max = 10.0;
  double domega = 0.01;

  void validate() const;
  std::size_t n_samples() const;
  double omega(std::size_t m) const { return omega_min + static_cast<double>(m) * domega; }
};

struct GreensSeries {
  TimeGrid grid;
  std::vector<cplx> values;
  std::string label;
  std::vector<std::string> warnings;
};

struct SpectralSeries {
  OmegaGrid grid;
  std::vector<double> values;
  double eta = 0.2;
  std::string label;
};

// Retarded fermionic G_ab(t) from the ground state and the fixed
// decomposition: term1 = -i e^{iE_g t} <c_a^dag Psi| U(t) |c_b^dag Psi>,
// term2 = -i e^{-iE_g t} <c_b Psi| U(-t) |c_a Psi>. Both a and b are the
// annihilation members of their ladder pairs. If both excitation sectors
// vanish the series is identically zero and carries a warning.
GreensSeries fermionic_gf(const LadderOperator& a, const LadderOperator& b,
                          const GroundState& gs, const EvolutionOperator& op,
                          const TimeGrid& grid);

// TFIM commutator correlator averaged over all sites:
// G(t) = (1/N) sum_i 2 Im(e^{iE_g t} <Z_i Psi| U(t) |Z_0 Psi>), real by
// construction.
GreensSeries spin_correlator_gf(int n_sites, const GroundState& gs, const EvolutionOperator& op,
                                const TimeGrid& grid);

// G~(omega) = trapezoid of e^{i(omega + i eta) t} G(t) over [0, t_max];
// A = -Im(G~)/pi.
SpectralSeries spectral_function(const GreensSeries& g, double eta, const OmegaGrid& grid);

// Exact broadened spectral function from all eigenpairs (poles at
// +-(E_m - E_g) with ladder matrix-element weights); statistics_sign +1 for
// the fermionic anticommutator form, -1 for the commutator form.
SpectralSeries lehmann_reference(const PauliSum& hamiltonian, const LadderOperator& a,
                                 const LadderOperator& b, double eta, const OmegaGrid& grid,
                                 int statistics_sign = +1);

// Local maxima of A above rel_threshold * max(A), as (omega, A) pairs.
std::vector<std::pair<double, double>> dominant_peaks(const SpectralSeries& a,
                                                      double rel_threshold = 0.1);

}  // namespace cartanqs
