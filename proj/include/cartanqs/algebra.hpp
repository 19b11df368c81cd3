#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cartanqs/pauli.hpp"

namespace cartanqs {

class SizeCapError : public PauliError {
 public:
  using PauliError::PauliError;
};

class AlgebraError : public PauliError {
 public:
  using PauliError::PauliError;
};

inline constexpr std::size_t kDefaultClosureCap = 4096;

// Cartan involution eigenvalue of a basis string under Y-parity,
// theta(P) = -(-1)^{#Y(P)} P: +1 places P in k, -1 in m.
inline int involution_sign(const PauliString& p) { return p.y_count() % 2 == 1 ? +1 : -1; }

// Minimal commutator-closed string set containing the generators, in
// canonical order. Coefficients are irrelevant: [P,Q] is either zero or a
// scalar times the product string. Throws SizeCapError past size_cap.
std::vector<PauliString> closure(const std::vector<PauliString>& generators,
                                 std::size_t size_cap = kDefaultClosureCap);

// Y-parity split of a commutator-closed basis into (k_basis, m_basis),
// both canonically ordered. Verifies the Cartan conditions
// [k,k] c k, [m,m] c k, [k,m] c m pairwise and throws AlgebraError on
// violation (unreachable for Y-parity on a closed set, but contractual).
std::pair<std::vector<PauliString>, std::vector<PauliString>> involution_split(
    const std::vector<PauliString>& g_basis);

// Greedy maximal abelian subalgebra of m containing seed: scans m_basis in
// canonical order and keeps every string commuting with all current members.
std::vector<PauliString> cartan_subalgebra(const std::vector<PauliString>& m_basis,
                                           const PauliString& seed);

// The Hamiltonian Lie algebra g(H) with its involution split and a Cartan
// subalgebra of m.
struct HamiltonianAlgebra {
  std::vector<PauliString> g_basis;
  std::vector<PauliString> k_basis;
  std::vector<PauliString> m_basis;
  std::vector<PauliString> h_basis;
};

// Full pipeline: closure of H's strings, Y-parity split, greedy h seeded by
// the first Hamiltonian term in canonical order. Rejects Hamiltonians with
// any odd-Y term (not in m under this involution) with a diagnostic naming
// the offending string.
HamiltonianAlgebra build_algebra(const PauliSum& hamiltonian,
                                 std::size_t size_cap = kDefaultClosureCap);

}  // namespace cartanqs
