#include "cartanqs/khk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <string>

namespace cartanqs {

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double two_norm(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

// Deterministic standard normal (Box-Muller on mt19937_64 uniforms), so
// restart perturbations do not depend on the standard library's
// normal_distribution implementation.
double draw_normal(std::mt19937_64& rng) {
  const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Shared cost/gradient evaluation: one backward sweep caches
// v_j = Ad_{R_j..R_N}(v), one forward sweep caches H_j (inverse rotations of
// the factors before j applied to H); then f = Re tr(v_0 H) and
// grad_j = Re(i * tr([k_j, v_j] H_j)).
struct Objective {
  const PauliSum& v;
  const PauliSum& hamiltonian;
  const std::vector<PauliString>& k_basis;
  int evals = 0;

  double eval(const std::vector<double>& theta, std::vector<double>& grad) {
    ++evals;
    const std::size_t n = k_basis.size();
    std::vector<PauliSum> v_chain(n + 1, PauliSum(v.n_qubits()));
    v_chain[n] = v;
    for (std::size_t j = n; j-- > 0;)
      v_chain[j] = adjoint_rotate(v_chain[j + 1], k_basis[j], theta[j]);
    std::vector<PauliSum> h_chain(n + 1, PauliSum(v.n_qubits()));
    h_chain[0] = hamiltonian;
    for (std::size_t j = 0; j < n; ++j)
      h_chain[j + 1] = adjoint_rotate(h_chain[j], k_basis[j], -theta[j]);
    grad.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      PauliSum comm(v.n_qubits());
      for (const auto& [p, c] : v_chain[j].terms()) {
        if (commutes(k_basis[j], p)) continue;
        const auto [phase, str] = multiply(k_basis[j], p);
        comm.add(str, 2.0 * phase * c);
      }
      grad[j] = (cplx{0, 1} * trace_dot(comm, h_chain[j])).real();
    }
    return trace_dot(v_chain[0], hamiltonian).real();
  }
};

struct LinePoint {
  double a = 0;
  double f = 0;
  double d = 0;  // directional derivative g . p
  std::vector<double> g;
};

struct LineResult {
  LinePoint pt;
  bool ok = false;
};

constexpr double kC1 = 1e-4;
constexpr double kC2 = 0.9;
constexpr int kMaxLineEvals = 40;

// Minimizer of the cubic through (a, fa, da) and (b, fb, db); NaN when the
// interpolant has none.
double cubic_min(double a, double fa, double da, double b, double fb, double db) {
  const double d1 = da + db - 3 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - da * db;
  if (disc < 0) return std::numeric_limits<double>::quiet_NaN();
  const double d2 = std::sqrt(disc) * (b > a ? 1 : -1);
  const double denom = db - da + 2 * d2;
  if (denom == 0) return std::numeric_limits<double>::quiet_NaN();
  return b - (b - a) * (db + d2 - d1) / denom;
}

LinePoint eval_line(Objective& obj, const std::vector<double>& x, const std::vector<double>& p,
                    double a) {
  std::vector<double> xa(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xa[i] = x[i] + a * p[i];
  LinePoint pt;
  pt.a = a;
  pt.f = obj.eval(xa, pt.g);
  pt.d = dot(pt.g, p);
  return pt;
}

// Refines a bracket [lo, hi] that contains strong-Wolfe points. Falls back
// to the best sufficient-decrease point found when the budget runs out
// (floating noise near the minimum can make the curvature condition
// unattainable; descent progress is still valid and the caller certifies
// convergence by residual, not by line-search success).
LineResult zoom(Objective& obj, const std::vector<double>& x, const std::vector<double>& p,
                double f0, double d0, LinePoint lo, LinePoint hi, int* evals_left) {
  // Below this band f differences are rounding noise; the curvature
  // condition is still meaningful there (approximate-Wolfe acceptance),
  // since the directional derivative resolves far smaller steps than f.
  const double f_noise = 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f0));
  while (*evals_left > 0) {
    double t = cubic_min(lo.a, lo.f, lo.d, hi.a, hi.f, hi.d);
    const double width = std::abs(hi.a - lo.a);
    const double a_min = std::min(lo.a, hi.a), a_max = std::max(lo.a, hi.a);
    if (!(t >= a_min + 0.05 * width && t <= a_max - 0.05 * width)) t = 0.5 * (lo.a + hi.a);
    LinePoint cand = eval_line(obj, x, p, t);
    --*evals_left;
    const bool armijo = cand.f <= f0 + kC1 * cand.a * d0;
    // Wolfe acceptance first: near the noise floor cand.f can tie lo.f
    // bitwise, and the narrowing branch below would discard the point.
    if ((armijo || std::abs(cand.f - f0) <= f_noise) && std::abs(cand.d) <= -kC2 * d0)
      return {std::move(cand), true};
    if (!armijo || cand.f >= lo.f) {
      hi = std::move(cand);
    } else {
      if (cand.d * (hi.a - lo.a) >= 0) hi = std::move(lo);
      lo = std::move(cand);
    }
    if (std::abs(hi.a - lo.a) < 1e-16 * std::max(1.0, std::abs(lo.a))) break;
  }
  const bool descended = lo.a > 0 && lo.f < f0;
  return {std::move(lo), descended};
}

// Strong-Wolfe line search (sufficient decrease + curvature), doubling
// bracket from a = 1, cubic-interpolating zoom.
LineResult line_search(Objective& obj, const std::vector<double>& x, double f0,
                       const std::vector<double>& g0, const std::vector<double>& p) {
  const double d0 = dot(g0, p);
  if (d0 >= 0) return {LinePoint{0, f0, d0, g0}, false};
  int evals_left = kMaxLineEvals;
  LinePoint prev{0, f0, d0, g0};
  double a = 1.0;
  LinePoint cur;
  for (int i = 0; i < 12 && evals_left > 0; ++i) {
    cur = eval_line(obj, x, p, a);
    --evals_left;
    if (cur.f > f0 + kC1 * cur.a * d0 || (i > 0 && cur.f >= prev.f))
      return zoom(obj, x, p, f0, d0, std::move(prev), std::move(cur), &evals_left);
    if (std::abs(cur.d) <= -kC2 * d0) return {std::move(cur), true};
    if (cur.d >= 0) return zoom(obj, x, p, f0, d0, std::move(cur), std::move(prev), &evals_left);
    prev = std::move(cur);
    a *= 2;
  }
  return {std::move(prev), false};
}

enum class BfgsStatus { grad_tol, stall, max_iters };

struct BfgsResult {
  std::vector<double> x;
  double f = 0;
  std::vector<double> g;
  BfgsStatus status = BfgsStatus::max_iters;
};

// Dense inverse-Hessian BFGS. On line-search failure the Hessian resets to
// identity (twice at most in a row) before declaring a stall.
BfgsResult bfgs_run(Objective& obj, std::vector<double> x, double grad_tol, int max_iters,
                    int* iter_counter, const TraceFn& trace) {
  const std::size_t n = x.size();
  BfgsResult res;
  std::vector<double> g;
  double f = obj.eval(x, g);
  std::vector<double> hess(n * n, 0.0);  // inverse-Hessian approximation
  auto reset_hess = [&] {
    std::fill(hess.begin(), hess.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) hess[i * n + i] = 1.0;
  };
  reset_hess();
  int resets = 0;
  for (int it = 0; it < max_iters; ++it) {
    const double ginf = inf_norm(g);
    if (trace) trace(*iter_counter, f, ginf);
    if (ginf < grad_tol) {
      res = {std::move(x), f, std::move(g), BfgsStatus::grad_tol};
      return res;
    }
    ++*iter_counter;
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < n; ++j) s -= hess[i * n + j] * g[j];
      p[i] = s;
    }
    if (dot(g, p) >= -1e-18) {
      reset_hess();
      for (std::size_t i = 0; i < n; ++i) p[i] = -g[i];
    }
    LineResult ls = line_search(obj, x, f, g, p);
    if (!ls.ok) {
      if (resets < 2) {
        ++resets;
        reset_hess();
        if (ls.pt.a > 0 && ls.pt.f < f) {
          for (std::size_t i = 0; i < n; ++i) x[i] += ls.pt.a * p[i];
          f = ls.pt.f;
          g = ls.pt.g;
        }
        continue;
      }
      res = {std::move(x), f, std::move(g), BfgsStatus::stall};
      return res;
    }
    resets = 0;
    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = ls.pt.a * p[i];
      y[i] = ls.pt.g[i] - g[i];
    }
    for (std::size_t i = 0; i < n; ++i) x[i] += s[i];
    const double sy = dot(s, y);
    if (sy > 1e-12 * two_norm(s) * two_norm(y)) {
      if (it == 0) {
        // Scale the initial inverse Hessian to the first curvature estimate.
        const double scale = sy / dot(y, y);
        std::fill(hess.begin(), hess.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) hess[i * n + i] = scale;
      }
      const double rho = 1.0 / sy;
      std::vector<double> hy(n, 0.0);
      double y_hy = 0;
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += hess[i * n + j] * y[j];
        hy[i] = acc;
      }
      for (std::size_t i = 0; i < n; ++i) y_hy += y[i] * hy[i];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          hess[i * n + j] += (rho * rho * y_hy + rho) * s[i] * s[j] -
                             rho * (s[i] * hy[j] + hy[i] * s[j]);
    }
    f = ls.pt.f;
    g = std::move(ls.pt.g);
  }
  res = {std::move(x), f, std::move(g), BfgsStatus::max_iters};
  return res;
}

void check_config(const SolverConfig& config) {
  if (!(config.grad_tol > 0)) throw SolverError("grad_tol must be positive");
  if (!(config.gamma > 1)) throw SolverError("gamma must exceed 1");
  if (config.max_iters < 1) throw SolverError("max_iters must be at least 1");
  if (config.restarts < 0) throw SolverError("restarts must be non-negative");
  if (!(config.residual_tol > 0)) throw SolverError("residual_tol must be positive");
}

}  // namespace

PauliSum build_v(const std::vector<PauliString>& h_basis, double gamma) {
  if (h_basis.empty()) throw SolverError("build_v requires a non-empty h_basis");
  if (!(gamma > 1)) throw SolverError("gamma must exceed 1");
  const double max_exponent = static_cast<double>(h_basis.size()) * std::log(gamma);
  if (max_exponent > std::log(std::numeric_limits<double>::max()))
    throw SolverError("gamma^" + std::to_string(h_basis.size()) +
                      " overflows double range; lower gamma");
  PauliSum v(h_basis.front().n_qubits);
  double coeff = 1.0;
  for (const auto& h : h_basis) {
    coeff *= gamma;
    v.add(h, coeff);
  }
  v *= 1.0 / norm(v);
  return v;
}

double cost(const std::vector<double>& theta, const PauliSum& v, const PauliSum& hamiltonian,
            const std::vector<PauliString>& k_basis) {
  if (theta.size() != k_basis.size())
    throw SolverError("theta length does not match k_basis size");
  PauliSum m0 = v;
  for (std::size_t j = k_basis.size(); j-- > 0;)
    m0 = adjoint_rotate(m0, k_basis[j], theta[j]);
  return inner(m0, hamiltonian);
}

std::vector<double> gradient(const std::vector<double>& theta, const PauliSum& v,
                             const PauliSum& hamiltonian,
                             const std::vector<PauliString>& k_basis) {
  if (theta.size() != k_basis.size())
    throw SolverError("theta length does not match k_basis size");
  Objective obj{v, hamiltonian, k_basis};
  std::vector<double> grad;
  obj.eval(theta, grad);
  return grad;
}

KFactorization minimize(const SolverConfig& config, const PauliSum& v,
                        const PauliSum& hamiltonian, const HamiltonianAlgebra& algebra,
                        MinimizeReport* report, const TraceFn& trace) {
  check_config(config);
  Objective obj{v, hamiltonian, algebra.k_basis};
  const std::size_t n = algebra.k_basis.size();
  int iter_counter = 0;

  BfgsResult best =
      bfgs_run(obj, std::vector<double>(n, 0.0), config.grad_tol, config.max_iters,
               &iter_counter, trace);
  int restarts_used = 0;
  std::mt19937_64 rng(config.seed);
  BfgsStatus status = best.status;
  while (status != BfgsStatus::grad_tol && restarts_used < config.restarts) {
    ++restarts_used;
    std::vector<double> x1 = best.x;
    for (double& xi : x1) xi += 1e-6 * draw_normal(rng);
    BfgsResult run =
        bfgs_run(obj, std::move(x1), config.grad_tol, config.max_iters, &iter_counter, trace);
    status = run.status;
    if (inf_norm(run.g) < inf_norm(best.g)) best = std::move(run);
  }

  if (report) {
    report->iters = iter_counter;
    report->evals = obj.evals;
    report->restarts_used = restarts_used;
    report->final_cost = best.f;
    report->final_grad_norm = inf_norm(best.g);
    report->grad_converged = report->final_grad_norm < config.grad_tol;
  }
  return KFactorization{algebra.k_basis, std::move(best.x)};
}

CartanCoordinates extract_h(const KFactorization& k0, const PauliSum& hamiltonian,
                            const HamiltonianAlgebra& algebra) {
  if (k0.k_strings.size() != k0.thetas.size())
    throw SolverError("factorization has mismatched strings and angles");
  PauliSum rotated = hamiltonian;
  // K0^dag H K0: inverse rotations in increasing factor order.
  for (std::size_t i = 0; i < k0.k_strings.size(); ++i)
    rotated = adjoint_rotate(rotated, k0.k_strings[i], -k0.thetas[i]);

  std::set<std::pair<std::uint64_t, std::uint64_t>> h_keys;
  for (const auto& h : algebra.h_basis) h_keys.insert(h.key());

  CartanCoordinates coords;
  coords.h_strings = algebra.h_basis;
  coords.lambdas.assign(algebra.h_basis.size(), 0.0);
  double residual_sq = 0;
  for (const auto& [str, c] : rotated.terms()) {
    if (h_keys.count(str.key())) {
      // Algebra coefficients are analytically real; any imaginary leak
      // counts toward the residual.
      residual_sq += c.imag() * c.imag();
    } else {
      residual_sq += std::norm(c);
    }
  }
  for (std::size_t i = 0; i < algebra.h_basis.size(); ++i)
    coords.lambdas[i] = rotated.coeff(algebra.h_basis[i]).real();
  coords.residual_norm = std::sqrt(residual_sq);
  return coords;
}

CartanSolution decompose(const PauliSum& hamiltonian, const SolverConfig& config,
                         std::size_t size_cap, const TraceFn& trace) {
  check_config(config);
  CartanSolution sol;
  sol.algebra = build_algebra(hamiltonian, size_cap);
  const PauliSum v = build_v(sol.algebra.h_basis, config.gamma);
  sol.k0 = minimize(config, v, hamiltonian, sol.algebra, &sol.report, trace);
  sol.h = extract_h(sol.k0, hamiltonian, sol.algebra);
  const double h_norm = norm(hamiltonian);
  sol.relative_residual = h_norm > 0 ? sol.h.residual_norm / h_norm : sol.h.residual_norm;
  sol.converged = sol.relative_residual < config.residual_tol;
  return sol;
}

}  // namespace cartanqs
