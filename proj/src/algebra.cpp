#include "cartanqs/algebra.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace cartanqs {

std::vector<PauliString> closure(const std::vector<PauliString>& generators,
                                 std::size_t size_cap) {
  if (generators.empty()) throw AlgebraError("closure requires at least one generator");
  const int n = generators.front().n_qubits;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  std::vector<PauliString> work;
  for (const auto& g : generators) {
    if (g.n_qubits != n) throw AlgebraError("closure generators must share n_qubits");
    if (seen.insert(g.key()).second) work.push_back(g);
  }
  // Worklist: every pair is visited once because the later-discovered member
  // of a pair sees the earlier one already in `work`.
  for (std::size_t i = 0; i < work.size(); ++i) {
    const PauliString p = work[i];
    const std::size_t known = work.size();
    for (std::size_t j = 0; j < known; ++j) {
      const PauliString& q = work[j];
      if (commutes(p, q)) continue;
      PauliString r = multiply(p, q).str;
      if (!seen.insert(r.key()).second) continue;
      if (work.size() >= size_cap)
        throw SizeCapError("closure exceeded size cap " + std::to_string(size_cap) +
                           " strings; the algebra is likely exponential");
      work.push_back(r);
    }
  }
  std::sort(work.begin(), work.end());
  return work;
}

std::pair<std::vector<PauliString>, std::vector<PauliString>> involution_split(
    const std::vector<PauliString>& g_basis) {
  std::vector<PauliString> k_basis, m_basis;
  for (const auto& p : g_basis)
    (involution_sign(p) == +1 ? k_basis : m_basis).push_back(p);

  // Verification pass for [k,k] c k, [m,m] c k, [k,m] c m (Eq.-3 conditions):
  // the commutator of two strings is a scalar times their product, so it is
  // enough to check the product string's Y-parity.
  std::set<std::pair<std::uint64_t, std::uint64_t>> g_keys;
  for (const auto& p : g_basis) g_keys.insert(p.key());
  auto check_pairs = [&](const std::vector<PauliString>& a, const std::vector<PauliString>& b,
                         int want_sign, const char* rule) {
    for (const auto& p : a)
      for (const auto& q : b) {
        if (p == q || commutes(p, q)) continue;
        const PauliString r = multiply(p, q).str;
        if (!g_keys.count(r.key()))
          throw AlgebraError(std::string("basis not closed: [") + p.label() + ", " + q.label() +
                             "] leaves the algebra");
        if (involution_sign(r) != want_sign)
          throw AlgebraError(std::string("Cartan condition ") + rule + " violated by [" +
                             p.label() + ", " + q.label() + "]");
      }
  };
  check_pairs(k_basis, k_basis, +1, "[k,k] in k");
  check_pairs(m_basis, m_basis, +1, "[m,m] in k");
  check_pairs(k_basis, m_basis, -1, "[k,m] in m");
  return {k_basis, m_basis};
}

std::vector<PauliString> cartan_subalgebra(const std::vector<PauliString>& m_basis,
                                           const PauliString& seed) {
  if (std::find(m_basis.begin(), m_basis.end(), seed) == m_basis.end())
    throw AlgebraError("Cartan subalgebra seed " + seed.label() + " is not in m_basis");
  std::vector<PauliString> h{seed};
  for (const auto& s : m_basis) {
    if (s == seed) continue;
    const bool fits = std::all_of(h.begin(), h.end(),
                                  [&](const PauliString& t) { return commutes(s, t); });
    if (fits) h.push_back(s);
  }
  std::sort(h.begin(), h.end());
  return h;
}

HamiltonianAlgebra build_algebra(const PauliSum& hamiltonian, std::size_t size_cap) {
  if (hamiltonian.empty()) throw AlgebraError("Hamiltonian has no terms");
  std::vector<PauliString> generators;
  for (const auto& [str, c] : hamiltonian.terms()) {
    if (str.y_count() % 2 == 1)
      throw AlgebraError("Hamiltonian term " + str.label() +
                         " has odd Y count and is not in m under the Y-parity involution");
    generators.push_back(str);
  }
  HamiltonianAlgebra algebra;
  algebra.g_basis = closure(generators, size_cap);
  std::tie(algebra.k_basis, algebra.m_basis) = involution_split(algebra.g_basis);
  // generators holds the Hamiltonian terms in canonical order already
  // (PauliSum iterates canonically); the first one seeds h.
  algebra.h_basis = cartan_subalgebra(algebra.m_basis, generators.front());
  return algebra;
}

}  // namespace cartanqs
