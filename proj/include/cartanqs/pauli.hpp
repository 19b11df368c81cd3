#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace cartanqs {

using cplx = std::complex<double>;

// Coefficients with magnitude at or below this are dropped after every
// linear-combination or rotation step.
inline constexpr double kPruneThreshold = 1e-14;

class PauliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hermitian n-qubit Pauli string in symplectic form, P = i^{|x&z|} X^x Z^z.
// Bit q of x_mask marks X or Y on qubit q; bit q of z_mask marks Z or Y.
// The i^{|x&z|} factor makes every string Hermitian; phases produced by
// products live in PhasedString / PauliSum coefficients, never here.
struct PauliString {
  int n_qubits = 1;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;

  PauliString() = default;
  PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  static PauliString identity(int n_qubits);
  // Parses labels like "X0 Z1 X2" or "I". With n_qubits = 0 the count is
  // inferred as max index + 1.
  static PauliString from_label(const std::string& label, int n_qubits = 0);

  bool is_identity() const { return x_mask == 0 && z_mask == 0; }
  char axis(int qubit) const;  // 'I', 'X', 'Y' or 'Z'
  int y_count() const;
  int weight() const;  // number of non-identity qubits
  std::string label() const;

  // Canonical order: ascending lexicographic on (z_mask, x_mask).
  std::pair<std::uint64_t, std::uint64_t> key() const { return {z_mask, x_mask}; }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_qubits == b.n_qubits && a.x_mask == b.x_mask && a.z_mask == b.z_mask;
  }
  friend bool operator<(const PauliString& a, const PauliString& b) {
    return a.key() < b.key();
  }
};

// Product of two strings up to the group phase: p*q = phase * str.
struct PhasedString {
  cplx phase;  // one of {+1, +i, -1, -i}
  PauliString str;
};

PhasedString multiply(const PauliString& p, const PauliString& q);
bool commutes(const PauliString& p, const PauliString& q);

// Sparse complex combination of PauliStrings. Terms are kept in canonical
// (z_mask, x_mask) order so iteration, printing and optimizer traces are
// deterministic.
class PauliSum {
 public:
  using TermMap = std::map<PauliString, cplx>;

  explicit PauliSum(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  // Accumulates coeff onto p; erases the term if the result falls at or
  // below the prune threshold.
  void add(const PauliString& p, cplx coeff);
  cplx coeff(const PauliString& p) const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(cplx factor);

 private:
  int n_qubits_;
  TermMap terms_;
};

PauliSum operator+(PauliSum a, const PauliSum& b);
PauliSum operator*(PauliSum a, cplx factor);
PauliSum operator*(cplx factor, PauliSum a);

// Full product expansion (Pauli-group multiplication term by term).
PauliSum multiply(const PauliSum& a, const PauliSum& b);
// [a, b] = ab - ba; for anticommuting basis strings each pair contributes
// 2 * phase * product.
PauliSum commutator(const PauliSum& a, const PauliSum& b);
// Hermitian adjoint: strings are self-adjoint, so only coefficients conjugate.
PauliSum adjoint(const PauliSum& a);

// e^{i theta k} a e^{-i theta k}: terms commuting with k are unchanged,
// anticommuting terms P map to cos(2 theta) P + i sin(2 theta) (k P).
PauliSum adjoint_rotate(const PauliSum& a, const PauliString& k, double theta);

// Bilinear coefficient dot product: sum_P a_P b_P = Tr(ab) / 2^n under
// Tr(P_i P_j) = 2^n delta_ij. No conjugation.
cplx trace_dot(const PauliSum& a, const PauliSum& b);
// Killing-form trace part for algebra elements (real coefficients):
// the real part of trace_dot.
double inner(const PauliSum& a, const PauliSum& b);
// sqrt(sum_P |a_P|^2).
double norm(const PauliSum& a);
// True when all coefficients have |Im| <= tol (algebra-element flag).
bool is_real(const PauliSum& a, double tol = 1e-12);

}  // namespace cartanqs
