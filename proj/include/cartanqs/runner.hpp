#pragma once

#include <iosfwd>
#include <string>

#include "cartanqs/circuit.hpp"
#include "cartanqs/greens.hpp"
#include "cartanqs/io.hpp"
#include "cartanqs/khk.hpp"

namespace cartanqs {

class ConfigError : public PauliError {
 public:
  using PauliError::PauliError;
};

// Process exit codes shared by the commands and the CLI wrapper.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitSizeCap = 4;

enum class ModelKind { hubbard, tfim };

struct RunConfig {
  ModelKind model = ModelKind::hubbard;
  double t_hop = -1.0;
  double u = 0.0;
  int n_sites = 2;
  double h_x = 1.0;
  SolverConfig solver;
  std::size_t closure_cap = kDefaultClosureCap;
  TimeGrid time_grid;
  double eta = 0.2;
  OmegaGrid omega_grid;
  std::string out_dir = ".";
};

// Line-oriented "key = value" settings; unknown, duplicate, inapplicable or
// out-of-range keys raise ConfigError naming the key.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::string& path);

PauliSum build_model(const RunConfig& config);

// Commands print their summary lines to `out` and write artifacts under
// config.out_dir. Each returns a process exit code.
int cmd_algebra(const RunConfig& config, std::ostream& out);
int cmd_decompose(const RunConfig& config, std::ostream& out);
int cmd_greens(const RunConfig& config, std::ostream& out);
int cmd_spectral(const RunConfig& config, std::ostream& out);
int cmd_emit_circuit(const RunConfig& config, double t, std::ostream& out);

}  // namespace cartanqs
