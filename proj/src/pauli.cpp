#include "cartanqs/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace cartanqs {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > 64) throw PauliError("qubit count must be in [1, 64], got " + std::to_string(n));
}

void check_same_qubits(int a, int b) {
  if (a != b)
    throw PauliError("mismatched qubit counts: " + std::to_string(a) + " vs " + std::to_string(b));
}

int popcount(std::uint64_t v) { return std::popcount(v); }

// i^e for e mod 4.
cplx quarter_phase(int e) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((e % 4) + 4) % 4];
}

}  // namespace

PauliString::PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_qubits(n_qubits), x_mask(x_mask), z_mask(z_mask) {
  check_qubit_count(n_qubits);
  const std::uint64_t valid = n_qubits == 64 ? ~0ull : (1ull << n_qubits) - 1;
  if ((x_mask | z_mask) & ~valid)
    throw PauliError("mask uses qubits beyond n_qubits = " + std::to_string(n_qubits));
}

PauliString PauliString::identity(int n_qubits) { return PauliString(n_qubits, 0, 0); }

PauliString PauliString::from_label(const std::string& label, int n_qubits) {
  std::uint64_t x = 0, z = 0, assigned = 0;
  int max_index = -1;
  std::istringstream in(label);
  std::string token;
  while (in >> token) {
    if (token == "I") continue;
    const char axis = token[0];
    if (axis != 'X' && axis != 'Y' && axis != 'Z')
      throw PauliError("bad Pauli token '" + token + "'");
    std::size_t pos = 0;
    int qubit = -1;
    try {
      qubit = std::stoi(token.substr(1), &pos);
    } catch (const std::exception&) {
      throw PauliError("bad Pauli token '" + token + "'");
    }
    if (pos + 1 != token.size() || qubit < 0 || qubit > 63)
      throw PauliError("bad Pauli token '" + token + "'");
    const std::uint64_t bit = 1ull << qubit;
    if (assigned & bit)
      throw PauliError("duplicate qubit " + std::to_string(qubit) + " in label");
    assigned |= bit;
    if (axis == 'X' || axis == 'Y') x |= bit;
    if (axis == 'Z' || axis == 'Y') z |= bit;
    max_index = std::max(max_index, qubit);
  }
  if (n_qubits == 0) n_qubits = max_index + 1 > 0 ? max_index + 1 : 1;
  if (max_index >= n_qubits)
    throw PauliError("label uses qubit " + std::to_string(max_index) + " beyond n_qubits = " +
                     std::to_string(n_qubits));
  return PauliString(n_qubits, x, z);
}

char PauliString::axis(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits) throw PauliError("qubit index out of range");
  const bool xb = (x_mask >> qubit) & 1, zb = (z_mask >> qubit) & 1;
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

int PauliString::y_count() const { return popcount(x_mask & z_mask); }

int PauliString::weight() const { return popcount(x_mask | z_mask); }

std::string PauliString::label() const {
  if (is_identity()) return "I";
  std::string out;
  for (int q = 0; q < n_qubits; ++q) {
    const char a = axis(q);
    if (a == 'I') continue;
    if (!out.empty()) out += ' ';
    out += a;
    out += std::to_string(q);
  }
  return out;
}

PhasedString multiply(const PauliString& p, const PauliString& q) {
  check_same_qubits(p.n_qubits, q.n_qubits);
  const std::uint64_t x = p.x_mask ^ q.x_mask;
  const std::uint64_t z = p.z_mask ^ q.z_mask;
  // Hermitian-form phase: the i^{|x&z|} factors of p, q and the result,
  // plus i^2 per Z-X swap when commuting q's X past p's Z.
  const int e = popcount(p.x_mask & p.z_mask) + popcount(q.x_mask & q.z_mask) -
                popcount(x & z) + 2 * popcount(p.z_mask & q.x_mask);
  return {quarter_phase(e), PauliString(p.n_qubits, x, z)};
}

bool commutes(const PauliString& p, const PauliString& q) {
  check_same_qubits(p.n_qubits, q.n_qubits);
  return ((popcount(p.x_mask & q.z_mask) + popcount(p.z_mask & q.x_mask)) & 1) == 0;
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) { check_qubit_count(n_qubits); }

void PauliSum::add(const PauliString& p, cplx coeff) {
  check_same_qubits(n_qubits_, p.n_qubits);
  auto [it, inserted] = terms_.try_emplace(p, coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) <= kPruneThreshold) terms_.erase(it);
}

cplx PauliSum::coeff(const PauliString& p) const {
  check_same_qubits(n_qubits_, p.n_qubits);
  const auto it = terms_.find(p);
  return it == terms_.end() ? cplx{0, 0} : it->second;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  check_same_qubits(n_qubits_, other.n_qubits_);
  for (const auto& [str, c] : other.terms_) add(str, c);
  return *this;
}

PauliSum& PauliSum::operator*=(cplx factor) {
  if (std::abs(factor) <= kPruneThreshold) {
    terms_.clear();
    return *this;
  }
  for (auto& [str, c] : terms_) c *= factor;
  return *this;
}

PauliSum operator+(PauliSum a, const PauliSum& b) {
  a += b;
  return a;
}

PauliSum operator*(PauliSum a, cplx factor) {
  a *= factor;
  return a;
}

PauliSum operator*(cplx factor, PauliSum a) {
  a *= factor;
  return a;
}

PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  check_same_qubits(a.n_qubits(), b.n_qubits());
  PauliSum out(a.n_qubits());
  for (const auto& [p, cp] : a.terms())
    for (const auto& [q, cq] : b.terms()) {
      const auto [phase, str] = multiply(p, q);
      out.add(str, cp * cq * phase);
    }
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  check_same_qubits(a.n_qubits(), b.n_qubits());
  PauliSum out(a.n_qubits());
  for (const auto& [p, cp] : a.terms())
    for (const auto& [q, cq] : b.terms()) {
      if (commutes(p, q)) continue;
      const auto [phase, str] = multiply(p, q);
      out.add(str, 2.0 * cp * cq * phase);
    }
  return out;
}

PauliSum adjoint(const PauliSum& a) {
  PauliSum out(a.n_qubits());
  for (const auto& [str, c] : a.terms()) out.add(str, std::conj(c));
  return out;
}

PauliSum adjoint_rotate(const PauliSum& a, const PauliString& k, double theta) {
  check_same_qubits(a.n_qubits(), k.n_qubits);
  const double c2 = std::cos(2 * theta), s2 = std::sin(2 * theta);
  PauliSum out(a.n_qubits());
  for (const auto& [p, c] : a.terms()) {
    if (commutes(p, k)) {
      out.add(p, c);
    } else {
      out.add(p, c * c2);
      const auto [phase, str] = multiply(k, p);
      out.add(str, cplx{0, 1} * s2 * phase * c);
    }
  }
  return out;
}

cplx trace_dot(const PauliSum& a, const PauliSum& b) {
  check_same_qubits(a.n_qubits(), b.n_qubits());
  // Iterate the smaller sum, look up in the larger.
  const PauliSum& small = a.size() <= b.size() ? a : b;
  const PauliSum& large = a.size() <= b.size() ? b : a;
  cplx total{0, 0};
  for (const auto& [str, c] : small.terms()) {
    const auto it = large.terms().find(str);
    if (it != large.terms().end()) total += c * it->second;
  }
  return total;
}

double inner(const PauliSum& a, const PauliSum& b) { return trace_dot(a, b).real(); }

double norm(const PauliSum& a) {
  double s = 0;
  for (const auto& [str, c] : a.terms()) s += std::norm(c);
  return std::sqrt(s);
}

bool is_real(const PauliSum& a, double tol) {
  for (const auto& [str, c] : a.terms())
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

}  // namespace cartanqs
