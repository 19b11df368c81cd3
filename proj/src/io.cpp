#include "cartanqs/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cartanqs {

namespace {

std::string fmt_real(double v, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string strip(const std::string& line) {
  std::string s = line.substr(0, line.find('#'));
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("invalid " + what + ": '" + text + "'");
  }
}

// Splits "<coefficient> <label...>" where the label may itself contain
// spaces; the coefficient is always the first whitespace-delimited token.
std::pair<std::string, std::string> split_first_token(const std::string& line) {
  const auto end = line.find_first_of(" \t");
  if (end == std::string::npos) return {line, ""};
  const auto rest = line.find_first_not_of(" \t", end);
  return {line.substr(0, end), rest == std::string::npos ? "" : line.substr(rest)};
}

// Largest qubit index mentioned in any X/Y/Z token, comments excluded.
int scan_max_index(const std::string& text) {
  int max_index = -1;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const std::string body = strip(line);
    std::size_t i = 0;
    while (i < body.size()) {
      const char c = body[i];
      if (c == 'X' || c == 'Y' || c == 'Z') {
        std::size_t j = i + 1;
        while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) ++j;
        if (j > i + 1) max_index = std::max(max_index, std::stoi(body.substr(i + 1, j - i - 1)));
        i = j;
      } else {
        ++i;
      }
    }
  }
  return max_index;
}

}  // namespace

std::string format_coefficient(cplx value) {
  if (value.imag() == 0) return fmt_real(value.real());
  if (value.real() == 0) return fmt_real(value.imag()) + "i";
  const std::string im = fmt_real(value.imag());
  return fmt_real(value.real()) + (im[0] == '-' ? "" : "+") + im + "i";
}

cplx parse_coefficient(const std::string& text) {
  if (text.empty()) throw ParseError("empty coefficient");
  if (text.back() != 'i') return {parse_real(text, "coefficient"), 0};

  std::string body = text.substr(0, text.size() - 1);
  // Find the sign that separates real and imaginary parts: the last +/- not
  // directly preceded by an exponent marker.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    if (body.empty() || body == "+" || body == "-") body += "1";
    return {0, parse_real(body, "coefficient")};
  }
  std::string im = body.substr(split);
  if (im == "+" || im == "-") im += "1";
  return {parse_real(body.substr(0, split), "coefficient"), parse_real(im, "coefficient")};
}

PauliSum parse_pauli_sum(std::istream& in, int n_qubits) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_pauli_sum_text(buffer.str(), n_qubits);
}

PauliSum parse_pauli_sum_text(const std::string& text, int n_qubits) {
  if (n_qubits == 0) {
    const int max_index = scan_max_index(text);
    if (max_index < 0) throw ParseError("no Pauli terms found");
    n_qubits = max_index + 1;
  }

  PauliSum sum(n_qubits);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = strip(line);
    if (s.empty()) continue;
    const auto [coeff_text, label] = split_first_token(s);
    try {
      const cplx coeff = parse_coefficient(coeff_text);
      sum.add(PauliString::from_label(label.empty() ? "I" : label, n_qubits), coeff);
      any = true;
    } catch (const PauliError& err) {
      throw ParseError("line " + std::to_string(line_no) + ": " + err.what());
    }
  }
  if (!any) throw ParseError("no Pauli terms found");
  return sum;
}

std::string format_pauli_sum(const PauliSum& sum) {
  std::string out;
  for (const auto& [str, coeff] : sum.terms()) {
    out += format_coefficient(coeff);
    out += ' ';
    out += str.label();
    out += '\n';
  }
  return out;
}

std::string format_decomposition(const KFactorization& k0, const CartanCoordinates& h) {
  std::string out;
  for (std::size_t i = 0; i < k0.k_strings.size(); ++i)
    out += k0.k_strings[i].label() + " " + fmt_real(k0.thetas[i]) + "\n";
  out += "H:\n";
  for (std::size_t i = 0; i < h.h_strings.size(); ++i)
    out += h.h_strings[i].label() + " " + fmt_real(h.lambdas[i]) + "\n";
  return out;
}

Decomposition parse_decomposition(std::istream& in, int n_qubits) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (n_qubits == 0) {
    const int max_index = scan_max_index(text);
    if (max_index < 0) throw ParseError("no factors found");
    n_qubits = max_index + 1;
  }

  Decomposition dec;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  bool in_h = false;
  while (std::getline(lines, line)) {
    ++line_no;
    const std::string s = strip(line);
    if (s.empty()) continue;
    if (s == "H:") {
      if (in_h) throw ParseError("line " + std::to_string(line_no) + ": duplicate H: section");
      in_h = true;
      continue;
    }
    const auto cut = s.find_last_of(" \t");
    if (cut == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected '<string> <value>'");
    try {
      const PauliString str = PauliString::from_label(s.substr(0, cut), n_qubits);
      const double value = parse_real(s.substr(cut + 1), "angle");
      if (in_h) {
        dec.h.h_strings.push_back(str);
        dec.h.lambdas.push_back(value);
      } else {
        dec.k0.k_strings.push_back(str);
        dec.k0.thetas.push_back(value);
      }
    } catch (const PauliError& err) {
      throw ParseError("line " + std::to_string(line_no) + ": " + err.what());
    }
  }
  if (!in_h) throw ParseError("missing H: section");
  if (dec.h.h_strings.empty()) throw ParseError("empty H: section");
  return dec;
}

void write_greens_csv(std::ostream& out, const GreensSeries& series,
                      const std::vector<std::string>& header_lines) {
  for (const auto& line : header_lines) out << "# " << line << "\n";
  out << "# t_max = " << fmt_real(series.grid.t_max) << ", dt = " << fmt_real(series.grid.dt)
      << ", samples = " << series.values.size() << "\n";
  for (const auto& warning : series.warnings) out << "# warning: " << warning << "\n";
  out << "# columns: t, re_G, im_G\n";
  for (std::size_t j = 0; j < series.values.size(); ++j)
    out << fmt_real(series.grid.t(j), "%.12e") << "," << fmt_real(series.values[j].real(), "%.12e")
        << "," << fmt_real(series.values[j].imag(), "%.12e") << "\n";
}

void write_spectral_csv(std::ostream& out, const SpectralSeries& series,
                        const std::vector<std::string>& header_lines) {
  for (const auto& line : header_lines) out << "# " << line << "\n";
  out << "# eta = " << fmt_real(series.eta) << "\n";
  out << "# omega_min = " << fmt_real(series.grid.omega_min)
      << ", omega_max = " << fmt_real(series.grid.omega_max)
      << ", domega = " << fmt_real(series.grid.domega) << ", samples = " << series.values.size()
      << "\n";
  out << "# columns: omega, A\n";
  for (std::size_t m = 0; m < series.values.size(); ++m)
    out << fmt_real(series.grid.omega(m), "%.12e") << "," << fmt_real(series.values[m], "%.12e")
        << "\n";
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = strip(line);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = strip(s.substr(0, eq));
    const std::string value = strip(s.substr(eq + 1));
    if (key.empty()) throw ParseError("line " + std::to_string(line_no) + ": missing key");
    if (value.empty())
      throw ParseError("line " + std::to_string(line_no) + ": missing value for '" + key + "'");
    if (!values.emplace(key, value).second)
      throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
  }
  return values;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ParseError("failed writing '" + path + "'");
}

}  // namespace cartanqs
