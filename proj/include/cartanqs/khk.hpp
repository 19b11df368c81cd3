#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "cartanqs/algebra.hpp"
#include "cartanqs/pauli.hpp"

namespace cartanqs {

class SolverError : public PauliError {
 public:
  using PauliError::PauliError;
};

struct SolverConfig {
  double gamma = std::numbers::pi;  // transcendental surrogate for the h-coefficients of v
  double grad_tol = 1e-10;          // infinity-norm stopping threshold
  int max_iters = 2000;
  int restarts = 8;                 // perturbed retries after a stalled descent
  std::uint64_t seed = 12345;       // deterministic restart perturbations
  double residual_tol = 1e-8;       // relative extract_h residual certifying success
};

// K0 = prod_i e^{i theta_i k_i}, factors in k_basis canonical order.
struct KFactorization {
  std::vector<PauliString> k_strings;
  std::vector<double> thetas;
};

// Coefficients of h = sum_i lambda_i h_i plus the off-h remainder norm.
struct CartanCoordinates {
  std::vector<PauliString> h_strings;
  std::vector<double> lambdas;
  double residual_norm = 0;
};

struct MinimizeReport {
  int iters = 0;
  int evals = 0;
  int restarts_used = 0;
  double final_cost = 0;
  double final_grad_norm = 0;   // infinity norm
  bool grad_converged = false;  // grad_tol reached (success may still be certified by residual)
};

// Optional per-iteration observer: (iter, f, |grad|_inf).
using TraceFn = std::function<void(int, double, double)>;

// v = sum_{i=1..|h|} gamma^i h_i, rescaled to unit norm. Coefficients are
// strictly positive and pairwise distinct, which KHK needs to make the
// minimizer generic. Throws when gamma^{|h|} overflows.
PauliSum build_v(const std::vector<PauliString>& h_basis, double gamma);

// f(theta) = inner(Ad_K(v), H) with Ad_K applied as a rotation sweep over v.
double cost(const std::vector<double>& theta, const PauliSum& v, const PauliSum& hamiltonian,
            const std::vector<PauliString>& k_basis);

// Analytic gradient via cached partial products v_j and H_j:
// df/dtheta_j = Re(i * trace_dot([k_j, v_j], H_j)).
std::vector<double> gradient(const std::vector<double>& theta, const PauliSum& v,
                             const PauliSum& hamiltonian,
                             const std::vector<PauliString>& k_basis);

// BFGS with strong-Wolfe line search from theta = 0; on stall, retries from
// deterministically perturbed copies of the best point. Returns the best
// factorization found (grad_converged in `report` tells whether grad_tol was
// reached; the caller certifies success via extract_h).
KFactorization minimize(const SolverConfig& config, const PauliSum& v,
                        const PauliSum& hamiltonian, const HamiltonianAlgebra& algebra,
                        MinimizeReport* report = nullptr, const TraceFn& trace = {});

// Applies the inverse rotation sweep K0^dag H K0 and projects onto h_basis.
// residual_norm is the norm of the off-h remainder.
CartanCoordinates extract_h(const KFactorization& k0, const PauliSum& hamiltonian,
                            const HamiltonianAlgebra& algebra);

// One decomposition: algebra -> v -> minimize -> extract. `converged` is the
// residual certificate residual_norm / norm(H) < residual_tol.
struct CartanSolution {
  HamiltonianAlgebra algebra;
  KFactorization k0;
  CartanCoordinates h;
  MinimizeReport report;
  double relative_residual = 0;
  bool converged = false;
};

CartanSolution decompose(const PauliSum& hamiltonian, const SolverConfig& config = {},
                         std::size_t size_cap = kDefaultClosureCap, const TraceFn& trace = {});

}  // namespace cartanqs
