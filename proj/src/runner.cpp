#include "cartanqs/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <vector>

#include "cartanqs/models.hpp"

namespace cartanqs {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': invalid number '" + value + "'");
  }
}

long long to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': invalid integer '" + value + "'");
  }
}

void require_model(const RunConfig& config, ModelKind wanted, const std::string& key) {
  if (config.model != wanted)
    throw ConfigError("key '" + key + "' applies only to model " +
                      (wanted == ModelKind::hubbard ? "hubbard" : "tfim"));
}

void require_positive(const std::string& key, double v) {
  if (!(v > 0)) throw ConfigError("key '" + key + "' must be positive");
}

std::vector<std::string> model_header(const RunConfig& config) {
  if (config.model == ModelKind::hubbard)
    return {"model = hubbard", "t_hop = " + fmt(config.t_hop), "U = " + fmt(config.u)};
  return {"model = tfim", "n_sites = " + std::to_string(config.n_sites),
          "h_x = " + fmt(config.h_x)};
}

std::string dims_line(const HamiltonianAlgebra& algebra) {
  return "dims g=" + std::to_string(algebra.g_basis.size()) +
         " k=" + std::to_string(algebra.k_basis.size()) +
         " m=" + std::to_string(algebra.m_basis.size()) +
         " h=" + std::to_string(algebra.h_basis.size());
}

std::string algebra_dump(const HamiltonianAlgebra& algebra) {
  std::string out;
  const std::pair<const char*, const std::vector<PauliString>*> sections[] = {
      {"G:", &algebra.g_basis},
      {"K:", &algebra.k_basis},
      {"M:", &algebra.m_basis},
      {"H:", &algebra.h_basis}};
  for (const auto& [title, basis] : sections) {
    out += title;
    out += '\n';
    for (const auto& str : *basis) {
      out += str.label();
      out += '\n';
    }
  }
  out += dims_line(algebra);
  out += '\n';
  return out;
}

std::string out_path(const RunConfig& config, const std::string& name) {
  fs::create_directories(config.out_dir);
  return (fs::path(config.out_dir) / name).string();
}

// Decomposition plus everything the Green's-function commands share.
struct Pipeline {
  PauliSum hamiltonian;
  CartanSolution solution;
};

Pipeline run_decomposition(const RunConfig& config, const TraceFn& trace = {}) {
  Pipeline p{build_model(config), {}};
  p.solution = decompose(p.hamiltonian, config.solver, config.closure_cap, trace);
  return p;
}

int report_non_convergence(const RunConfig& config, const CartanSolution& solution,
                           std::ostream& out) {
  out << "non-convergence: relative residual " << fmt(solution.relative_residual)
      << " exceeds tolerance " << fmt(config.solver.residual_tol) << "\n";
  return kExitNoConvergence;
}

std::vector<GreensSeries> compute_greens(const RunConfig& config, const Pipeline& pipeline) {
  const GroundState gs = ground_state(pipeline.hamiltonian);
  const EvolutionOperator op = make_evolution_operator(pipeline.solution);
  std::vector<GreensSeries> series;
  if (config.model == ModelKind::hubbard) {
    const std::pair<Momentum, const char*> channels[] = {{Momentum::zero, "k0"},
                                                         {Momentum::pi, "kpi"}};
    for (const auto& [k, label] : channels) {
      const LadderOperator a = momentum_op(k, Spin::up, false);
      GreensSeries g = fermionic_gf(a, a, gs, op, config.time_grid);
      g.label = label;
      series.push_back(std::move(g));
    }
  } else {
    series.push_back(spin_correlator_gf(config.n_sites, gs, op, config.time_grid));
  }
  return series;
}

}  // namespace

RunConfig parse_run_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  try {
    kv = parse_key_values(in);
  } catch (const ParseError& err) {
    throw ConfigError(err.what());
  }

  RunConfig config;
  const auto model_it = kv.find("model");
  if (model_it == kv.end()) throw ConfigError("missing required key 'model'");
  if (model_it->second == "hubbard")
    config.model = ModelKind::hubbard;
  else if (model_it->second == "tfim")
    config.model = ModelKind::tfim;
  else
    throw ConfigError("key 'model': expected 'hubbard' or 'tfim', got '" + model_it->second + "'");

  for (const auto& [key, value] : kv) {
    if (key == "model") {
      continue;
    } else if (key == "t_hop") {
      require_model(config, ModelKind::hubbard, key);
      config.t_hop = to_double(key, value);
    } else if (key == "U") {
      require_model(config, ModelKind::hubbard, key);
      config.u = to_double(key, value);
    } else if (key == "n_sites") {
      config.n_sites = static_cast<int>(to_int(key, value));
    } else if (key == "h_x") {
      require_model(config, ModelKind::tfim, key);
      config.h_x = to_double(key, value);
    } else if (key == "gamma") {
      config.solver.gamma = to_double(key, value);
    } else if (key == "grad_tol") {
      config.solver.grad_tol = to_double(key, value);
    } else if (key == "max_iters") {
      config.solver.max_iters = static_cast<int>(to_int(key, value));
    } else if (key == "restarts") {
      config.solver.restarts = static_cast<int>(to_int(key, value));
    } else if (key == "seed") {
      config.solver.seed = static_cast<std::uint64_t>(to_int(key, value));
    } else if (key == "residual_tol") {
      config.solver.residual_tol = to_double(key, value);
    } else if (key == "closure_cap") {
      const long long cap = to_int(key, value);
      if (cap < 1) throw ConfigError("key 'closure_cap' must be positive");
      config.closure_cap = static_cast<std::size_t>(cap);
    } else if (key == "t_max") {
      config.time_grid.t_max = to_double(key, value);
    } else if (key == "dt") {
      config.time_grid.dt = to_double(key, value);
    } else if (key == "eta") {
      config.eta = to_double(key, value);
    } else if (key == "omega_min") {
      config.omega_grid.omega_min = to_double(key, value);
    } else if (key == "omega_max") {
      config.omega_grid.omega_max = to_double(key, value);
    } else if (key == "domega") {
      config.omega_grid.domega = to_double(key, value);
    } else if (key == "out_dir") {
      config.out_dir = value;
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  if (config.model == ModelKind::hubbard && config.n_sites != 2)
    throw ConfigError("key 'n_sites' must be 2 for model hubbard");
  if (config.model == ModelKind::tfim && (config.n_sites < 2 || config.n_sites > 62))
    throw ConfigError("key 'n_sites' must be in [2, 62]");
  require_positive("gamma", config.solver.gamma);
  require_positive("grad_tol", config.solver.grad_tol);
  require_positive("residual_tol", config.solver.residual_tol);
  require_positive("eta", config.eta);
  if (config.solver.max_iters < 1) throw ConfigError("key 'max_iters' must be positive");
  if (config.solver.restarts < 0) throw ConfigError("key 'restarts' must be non-negative");
  try {
    config.time_grid.validate();
    config.omega_grid.validate();
  } catch (const GridError& err) {
    throw ConfigError(err.what());
  }
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::istringstream in(read_text_file(path));
  try {
    return parse_run_config(in);
  } catch (const ConfigError& err) {
    throw ConfigError(path + ": " + err.what());
  }
}

PauliSum build_model(const RunConfig& config) {
  if (config.model == ModelKind::hubbard) {
    FermiHubbardSpec spec;
    spec.t_hop = config.t_hop;
    spec.U = config.u;
    return build_hubbard(spec);
  }
  TFIMSpec spec;
  spec.n_sites = config.n_sites;
  spec.h_x = config.h_x;
  return build_tfim(spec);
}

int cmd_algebra(const RunConfig& config, std::ostream& out) {
  const PauliSum hamiltonian = build_model(config);
  const HamiltonianAlgebra algebra = build_algebra(hamiltonian, config.closure_cap);
  const std::string dump = algebra_dump(algebra);
  write_text_file(out_path(config, "algebra.txt"), dump);
  out << dump;
  return kExitOk;
}

int cmd_decompose(const RunConfig& config, std::ostream& out) {
  std::string trace_text;
  const TraceFn observer = [&](int iter, double f, double grad_norm) {
    const std::string line =
        "iter=" + std::to_string(iter) + " f=" + fmt(f) + " |grad|=" + fmt(grad_norm) + "\n";
    trace_text += line;
    out << line;
  };
  const Pipeline pipeline = run_decomposition(config, observer);
  const CartanSolution& sol = pipeline.solution;

  write_text_file(out_path(config, "trace.txt"), trace_text);
  write_text_file(out_path(config, "algebra.txt"), algebra_dump(sol.algebra));
  write_text_file(out_path(config, "decomposition.txt"), format_decomposition(sol.k0, sol.h));

  out << "residual=" << fmt(sol.relative_residual) << " dims k=" << sol.algebra.k_basis.size()
      << "\n";
  out << dims_line(sol.algebra) << "\n";
  if (!sol.converged) return report_non_convergence(config, sol, out);
  return kExitOk;
}

int cmd_greens(const RunConfig& config, std::ostream& out) {
  const Pipeline pipeline = run_decomposition(config);
  if (!pipeline.solution.converged)
    return report_non_convergence(config, pipeline.solution, out);

  const std::vector<std::string> header = model_header(config);
  for (const GreensSeries& series : compute_greens(config, pipeline)) {
    std::ostringstream csv;
    write_greens_csv(csv, series, header);
    const std::string path = out_path(config, "greens_" + series.label + ".csv");
    write_text_file(path, csv.str());
    out << "wrote " << path << "\n";
  }
  return kExitOk;
}

int cmd_spectral(const RunConfig& config, std::ostream& out) {
  const Pipeline pipeline = run_decomposition(config);
  if (!pipeline.solution.converged)
    return report_non_convergence(config, pipeline.solution, out);

  const double coeff_norm = norm(pipeline.hamiltonian);
  if (config.omega_grid.omega_min > -coeff_norm || config.omega_grid.omega_max < coeff_norm)
    throw ConfigError("omega grid must cover [-" + fmt(coeff_norm) + ", " + fmt(coeff_norm) +
                      "] (coefficient norm of the Hamiltonian)");

  const std::vector<std::string> header = model_header(config);
  for (const GreensSeries& g : compute_greens(config, pipeline)) {
    const SpectralSeries a = spectral_function(g, config.eta, config.omega_grid);
    std::ostringstream csv;
    write_spectral_csv(csv, a, header);
    const std::string path = out_path(config, "spectral_" + a.label + ".csv");
    write_text_file(path, csv.str());
    out << "wrote " << path << "\n";

    out << "peaks " << a.label << ":";
    for (const auto& [omega, value] : dominant_peaks(a))
      out << " omega=" << fmt(omega, "%.6g") << " A=" << fmt(value, "%.6g");
    out << "\n";
  }
  return kExitOk;
}

int cmd_emit_circuit(const RunConfig& config, double t, std::ostream& out) {
  const Pipeline pipeline = run_decomposition(config);
  if (!pipeline.solution.converged)
    return report_non_convergence(config, pipeline.solution, out);

  const EvolutionOperator op = make_evolution_operator(pipeline.solution);
  const QuantumCircuit circuit = emit_circuit(op, t);
  const std::string path = out_path(config, "circuit.qasm");
  write_text_file(path, to_qasm(circuit));
  out << "wrote " << path << "\n";
  out << "gates=" << circuit.gate_count() << " depth=" << circuit.depth() << "\n";
  return kExitOk;
}

}  // namespace cartanqs
