#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cartanqs/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Cartan KHK decomposition of Pauli-sum Hamiltonians: fixed-depth "
               "time evolution, Green's functions and spectral functions"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  double circuit_t = 0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run-config file (key = value lines)")->required();
    sub->add_option("--out", out_dir, "output directory, overrides out_dir from the config");
    return sub;
  };
  CLI::App* decompose_cmd = add_common(
      app.add_subcommand("decompose", "solve K0 and h, write decomposition and algebra files"));
  CLI::App* greens_cmd =
      add_common(app.add_subcommand("greens", "write retarded Green's function CSVs"));
  CLI::App* spectral_cmd =
      add_common(app.add_subcommand("spectral", "write spectral function CSVs"));
  CLI::App* circuit_cmd =
      add_common(app.add_subcommand("emit-circuit", "write the evolution circuit as OpenQASM"));
  circuit_cmd->add_option("--t", circuit_t, "evolution time")->required();
  CLI::App* algebra_cmd =
      add_common(app.add_subcommand("algebra", "dump the Hamiltonian Lie algebra bases"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : cartanqs::kExitConfig;
  }

  try {
    cartanqs::RunConfig config = cartanqs::load_run_config(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (decompose_cmd->parsed()) return cartanqs::cmd_decompose(config, std::cout);
    if (greens_cmd->parsed()) return cartanqs::cmd_greens(config, std::cout);
    if (spectral_cmd->parsed()) return cartanqs::cmd_spectral(config, std::cout);
    if (circuit_cmd->parsed()) return cartanqs::cmd_emit_circuit(config, circuit_t, std::cout);
    if (algebra_cmd->parsed()) return cartanqs::cmd_algebra(config, std::cout);
  } catch (const cartanqs::SizeCapError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return cartanqs::kExitSizeCap;
  } catch (const cartanqs::PauliError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return cartanqs::kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return cartanqs::kExitConfig;
}
