#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cartanqs/greens.hpp"
#include "cartanqs/khk.hpp"

namespace cartanqs {

class ParseError : public PauliError {
 public:
  using PauliError::PauliError;
};

// Coefficient literal: decimal real, or complex "a+bi" / "a-bi" / "bi".
std::string format_coefficient(cplx value);
cplx parse_coefficient(const std::string& text);

// One term per line, "<coefficient> <string>", identity on unlisted qubits,
// "#" starts a comment. Repeated strings accumulate. With n_qubits = 0 the
// count is inferred from the largest index in the file.
PauliSum parse_pauli_sum(std::istream& in, int n_qubits = 0);
PauliSum parse_pauli_sum_text(const std::string& text, int n_qubits = 0);
std::string format_pauli_sum(const PauliSum& sum);

struct Decomposition {
  KFactorization k0;
  CartanCoordinates h;
};

// Text form: one "<k-string> <theta>" line per factor, then an "H:" line,
// then one "<h-string> <lambda>" line per Cartan coefficient.
std::string format_decomposition(const KFactorization& k0, const CartanCoordinates& h);
Decomposition parse_decomposition(std::istream& in, int n_qubits = 0);

// CSV bodies carry "#" metadata lines first (callers prepend model
// parameters), then one data row per sample.
void write_greens_csv(std::ostream& out, const GreensSeries& series,
                      const std::vector<std::string>& header_lines);
void write_spectral_csv(std::ostream& out, const SpectralSeries& series,
                        const std::vector<std::string>& header_lines);

// Line-oriented "key = value" settings, "#" comments. Duplicate keys are an
// error naming the key; value validation is the caller's.
std::map<std::string, std::string> parse_key_values(std::istream& in);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace cartanqs
