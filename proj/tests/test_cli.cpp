#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cartanqs/io.hpp"
#include "doctest.h"

#ifndef CARTANQS_CLI_PATH
#error "CARTANQS_CLI_PATH must point at the cartanqs binary"
#endif

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path capture =
      fs::temp_directory_path() /
      ("cartanqs_cli_out_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  const std::string cmd =
      std::string(CARTANQS_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());

  CliResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(capture);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  fs::remove(capture);
  return result;
}

// Per-test scratch directory under the system temp root, deleted on exit.
struct ScratchDir {
  fs::path path;

  explicit ScratchDir(const std::string& name)
      : path(fs::temp_directory_path() /
             ("cartanqs_test_" + name + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~ScratchDir() { fs::remove_all(path); }

  std::string file(const std::string& name) const { return (path / name).string(); }

  std::string write_config(const std::string& content) const {
    const std::string config_path = file("run.cfg");
    std::ofstream out(config_path);
    out << content;
    return config_path;
  }
};

std::size_t count_data_rows(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++rows;
  return rows;
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++count;
  return count;
}

// First line of `text` that starts with `prefix`, empty if none.
std::string line_starting_with(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) return line;
  return {};
}

}  // namespace

TEST_CASE("decompose reports dims, residual and trace for the Hubbard dimer") {
  const ScratchDir dir("decompose_hub");
  const std::string config = dir.write_config("model = hubbard\nU = 3\n");
  const CliResult res = run_cli("decompose --config " + config + " --out " + dir.path.string());

  CHECK(res.exit_code == 0);
  CHECK(res.output.find("dims g=24 k=8 m=16 h=8") != std::string::npos);
  CHECK(res.output.find("residual=") != std::string::npos);
  CHECK(res.output.find(" dims k=8") != std::string::npos);
  CHECK(line_starting_with(res.output, "iter=0 f=").find("|grad|=") != std::string::npos);

  CHECK(fs::exists(dir.file("algebra.txt")));
  CHECK(fs::exists(dir.file("trace.txt")));

  std::ifstream dec_file(dir.file("decomposition.txt"));
  REQUIRE(dec_file.good());
  const cartanqs::Decomposition dec = cartanqs::parse_decomposition(dec_file);
  CHECK(dec.k0.k_strings.size() == 8);
  CHECK(dec.h.h_strings.size() == 8);
}

TEST_CASE("decompose on the two-site TFIM") {
  const ScratchDir dir("decompose_tfim2");
  const std::string config = dir.write_config("model = tfim\nn_sites = 2\n");
  const CliResult res = run_cli("decompose --config " + config + " --out " + dir.path.string());

  CHECK(res.exit_code == 0);
  CHECK(res.output.find("dims g=6 k=2 m=4 h=2") != std::string::npos);
}

TEST_CASE("algebra dumps all four bases and writes the same text to disk") {
  const ScratchDir dir("algebra_tfim3");
  const std::string config = dir.write_config("model = tfim\nn_sites = 3\n");
  const CliResult res = run_cli("algebra --config " + config + " --out " + dir.path.string());

  CHECK(res.exit_code == 0);
  for (const char* section : {"G:\n", "K:\n", "M:\n", "H:\n"})
    CHECK(res.output.find(section) != std::string::npos);
  CHECK(res.output.find("dims g=15 k=6 m=9 h=3") != std::string::npos);
  CHECK(cartanqs::read_text_file(dir.file("algebra.txt")) == res.output);
}

TEST_CASE("greens writes one CSV per Hubbard momentum channel") {
  const ScratchDir dir("greens_hub");
  const std::string config = dir.write_config("model = hubbard\nU = 3\n");
  const CliResult res = run_cli("greens --config " + config + " --out " + dir.path.string());

  CHECK(res.exit_code == 0);
  CHECK(res.output.find("greens_k0.csv") != std::string::npos);
  CHECK(res.output.find("greens_kpi.csv") != std::string::npos);
  CHECK(count_data_rows(dir.file("greens_k0.csv")) == 351);
  CHECK(count_data_rows(dir.file("greens_kpi.csv")) == 351);

  // Reruns are byte identical.
  const ScratchDir again("greens_hub_again");
  run_cli("greens --config " + config + " --out " + again.path.string());
  CHECK(cartanqs::read_text_file(dir.file("greens_k0.csv")) ==
        cartanqs::read_text_file(again.file("greens_k0.csv")));
}

TEST_CASE("greens writes the site-averaged CSV for the TFIM") {
  const ScratchDir dir("greens_tfim");
  const std::string config = dir.write_config("model = tfim\nn_sites = 2\n");
  const CliResult res = run_cli("greens --config " + config + " --out " + dir.path.string());

  CHECK(res.exit_code == 0);
  CHECK(count_data_rows(dir.file("greens_site_avg.csv")) == 351);
}

TEST_CASE("greens honours a degenerate time grid of one sample") {
  const ScratchDir dir("greens_t0");
  const std::string config = dir.write_config("model = hubbard\nU = 3\nt_max = 0\n");
  const CliResult res = run_cli("greens --config " + config + " --out " + dir.path.string());

  CHECK(res.exit_code == 0);
  CHECK(count_data_rows(dir.file("greens_k0.csv")) == 1);
}

TEST_CASE("spectral reports exactly two dominant peaks at U=6") {
  const ScratchDir dir("spectral_hub6");
  const std::string config = dir.write_config("model = hubbard\nU = 6\n");
  const CliResult res = run_cli("spectral --config " + config + " --out " + dir.path.string());

  CHECK(res.exit_code == 0);
  CHECK(count_data_rows(dir.file("spectral_k0.csv")) == 2001);
  CHECK(count_data_rows(dir.file("spectral_kpi.csv")) == 2001);

  const std::string peaks = line_starting_with(res.output, "peaks k0:");
  REQUIRE(!peaks.empty());
  CHECK(count_occurrences(peaks, " omega=") == 2);

  const ScratchDir again("spectral_hub6_again");
  run_cli("spectral --config " + config + " --out " + again.path.string());
  CHECK(cartanqs::read_text_file(dir.file("spectral_k0.csv")) ==
        cartanqs::read_text_file(again.file("spectral_k0.csv")));
}

TEST_CASE("spectral rejects an omega grid narrower than the coefficient norm") {
  const ScratchDir dir("spectral_narrow");
  const std::string config =
      dir.write_config("model = hubbard\nU = 6\nomega_min = -1\nomega_max = 1\n");
  const CliResult res = run_cli("spectral --config " + config + " --out " + dir.path.string());

  CHECK(res.exit_code == 2);
  CHECK(res.output.find("omega grid must cover") != std::string::npos);
}

TEST_CASE("emit-circuit gate count and depth are t-independent") {
  const ScratchDir dir("circuit_hub");
  const std::string config = dir.write_config("model = hubbard\nU = 3\n");

  const CliResult short_t =
      run_cli("emit-circuit --config " + config + " --out " + dir.path.string() + " --t 0.1");
  CHECK(short_t.exit_code == 0);
  const std::string counts = line_starting_with(short_t.output, "gates=");
  REQUIRE(!counts.empty());
  CHECK(counts.find(" depth=") != std::string::npos);

  const std::string qasm = cartanqs::read_text_file(dir.file("circuit.qasm"));
  CHECK(qasm.rfind("OPENQASM 2.0;", 0) == 0);
  CHECK(qasm.find("// gates=") != std::string::npos);

  const CliResult long_t =
      run_cli("emit-circuit --config " + config + " --out " + dir.path.string() + " --t 35");
  CHECK(long_t.exit_code == 0);
  CHECK(line_starting_with(long_t.output, "gates=") == counts);
}

TEST_CASE("config errors exit with code 2 and name the offending key") {
  const ScratchDir dir("config_errors");

  const std::string unknown = dir.write_config("model = hubbard\nbogus = 1\n");
  CliResult res = run_cli("decompose --config " + unknown + " --out " + dir.path.string());
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("bogus") != std::string::npos);

  const std::string bad_sites = dir.write_config("model = hubbard\nn_sites = 3\n");
  res = run_cli("decompose --config " + bad_sites + " --out " + dir.path.string());
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("n_sites") != std::string::npos);

  const std::string wrong_model = dir.write_config("model = tfim\nU = 3\n");
  res = run_cli("decompose --config " + wrong_model + " --out " + dir.path.string());
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("'U'") != std::string::npos);

  const std::string no_model = dir.write_config("U = 3\n");
  res = run_cli("decompose --config " + no_model + " --out " + dir.path.string());
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("model") != std::string::npos);

  const std::string ragged_grid = dir.write_config("model = hubbard\nt_max = 1.05\n");
  res = run_cli("greens --config " + ragged_grid + " --out " + dir.path.string());
  CHECK(res.exit_code == 2);

  res = run_cli("decompose --config " + dir.file("missing.cfg"));
  CHECK(res.exit_code == 2);

  res = run_cli("decompose");
  CHECK(res.exit_code == 2);

  res = run_cli("");
  CHECK(res.exit_code == 2);
}

TEST_CASE("closure cap overflow exits with code 4") {
  const ScratchDir dir("cap_overflow");
  const std::string config = dir.write_config("model = hubbard\nU = 3\nclosure_cap = 4\n");
  const CliResult res = run_cli("algebra --config " + config + " --out " + dir.path.string());

  CHECK(res.exit_code == 4);
  CHECK(res.output.find("error:") != std::string::npos);
}

TEST_CASE("a starved optimizer budget exits with code 3") {
  const ScratchDir dir("starved");
  const std::string config =
      dir.write_config("model = tfim\nn_sites = 4\nmax_iters = 1\nrestarts = 0\n");
  const CliResult res = run_cli("decompose --config " + config + " --out " + dir.path.string());

  CHECK(res.exit_code == 3);
  CHECK(res.output.find("non-convergence") != std::string::npos);
}
