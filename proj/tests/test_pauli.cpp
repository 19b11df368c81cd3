#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cartanqs/pauli.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cartanqs;
using oracle::Mat;

namespace {

PauliString str(const std::string& label, int n = 0) { return PauliString::from_label(label, n); }

PauliSum single(const std::string& label, cplx coeff, int n) {
  PauliSum s(n);
  s.add(str(label, n), coeff);
  return s;
}

PauliString random_string(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> bits(0, (1ull << n) - 1);
  return {n, bits(rng), bits(rng)};
}

PauliSum random_sum(int n, int terms, bool real, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  PauliSum s(n);
  for (int i = 0; i < terms; ++i)
    s.add(random_string(n, rng), real ? cplx(gauss(rng)) : cplx(gauss(rng), gauss(rng)));
  return s;
}

}  // namespace

TEST_CASE("labels round trip and infer qubit count") {
  CHECK(str("X0 Z1 X2").label() == "X0 Z1 X2");
  CHECK(str("X0 Z1 X2").n_qubits == 3);
  CHECK(str("Z3").n_qubits == 4);
  CHECK(str("I", 2).label() == "I");
  CHECK(PauliString::identity(3).is_identity());
  CHECK(str("Y5", 8).n_qubits == 8);
  CHECK(str("X63").n_qubits == 64);

  CHECK(str("X0 Y1 Z2").y_count() == 1);
  CHECK(str("Y0 Y2").weight() == 2);
  CHECK(str("X0").axis(0) == 'X');
  CHECK(str("X0", 2).axis(1) == 'I');
}

TEST_CASE("label errors") {
  CHECK_THROWS_AS(str("Q0"), PauliError);
  CHECK_THROWS_AS(str("X"), PauliError);
  CHECK_THROWS_AS(str("X0 Z0"), PauliError);   // duplicate qubit
  CHECK_THROWS_AS(str("X64"), PauliError);     // beyond the 64-qubit mask
  CHECK_THROWS_AS(str("X3", 2), PauliError);   // index outside explicit count
  CHECK(str("").is_identity());                // empty label means identity
}

TEST_CASE("single string products match the Pauli table") {
  auto [phase_xy, zstr] = multiply(str("X0"), str("Y0"));
  CHECK(phase_xy == cplx(0, 1));
  CHECK(zstr == str("Z0"));

  auto [phase_zz, id] = multiply(str("Z0"), str("Z0"));
  CHECK(phase_zz == cplx(1));
  CHECK(id.is_identity());

  auto [phase, s] = multiply(str("X0 Z1"), str("Y0 Z1"));
  CHECK(phase == cplx(0, 1));
  CHECK(s == str("Z0", 2));
}

TEST_CASE("multiply(p,p) is the identity with phase +1") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const PauliString p = random_string(4, rng);
    auto [phase, s] = multiply(p, p);
    CHECK(phase == cplx(1));
    CHECK(s.is_identity());
  }
}

TEST_CASE("multiply agrees with dense matrix products for random pairs") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + int(rng() % 4);
    const PauliString p = random_string(n, rng);
    const PauliString q = random_string(n, rng);
    auto [phase, s] = multiply(p, q);
    const Mat lhs = oracle::dense(p) * oracle::dense(q);
    const Mat rhs = phase * oracle::dense(s);
    CHECK((lhs - rhs).norm() < 1e-12);
    const cplx four[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    bool is_root = false;
    for (cplx r : four) is_root |= phase == r;
    CHECK(is_root);
  }
}

TEST_CASE("multiply rejects mismatched qubit counts") {
  CHECK_THROWS_AS(multiply(str("X0", 1), str("X0", 2)), PauliError);
}

TEST_CASE("commutes matches the spec examples") {
  CHECK_FALSE(commutes(str("X0"), str("Y0")));
  CHECK(commutes(str("X0 X1"), str("Z0 Z1")));
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) CHECK(commutes(random_string(3, rng), str("I", 3)));
}

TEST_CASE("commutes iff the string commutator vanishes, exhaustively at n=2") {
  for (std::uint64_t xa = 0; xa < 4; ++xa)
    for (std::uint64_t za = 0; za < 4; ++za)
      for (std::uint64_t xb = 0; xb < 4; ++xb)
        for (std::uint64_t zb = 0; zb < 4; ++zb) {
          const PauliString p{2, xa, za}, q{2, xb, zb};
          const PauliSum comm = commutator(single(p.label(), 1, 2), single(q.label(), 1, 2));
          CHECK(commutes(p, q) == comm.empty());
        }
}

TEST_CASE("commutator values") {
  const PauliSum c1 = commutator(single("X0", 1, 1), single("Y0", 1, 1));
  CHECK(c1.size() == 1);
  CHECK(c1.coeff(str("Z0")) == cplx(0, 2));

  const PauliSum c2 = commutator(single("Z0 Z1", 1, 2), single("X0", 1, 2));
  CHECK(c2.size() == 1);
  CHECK(c2.coeff(str("Y0 Z1")) == cplx(0, 2));

  CHECK(commutator(single("Z0 Z1", 1, 2), single("Z0", 1, 2)).empty());
}

TEST_CASE("commutator matches dense on random sums and is antisymmetric") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 25; ++i) {
    const PauliSum a = random_sum(3, 4, false, rng);
    const PauliSum b = random_sum(3, 4, false, rng);
    const Mat lhs = oracle::dense(commutator(a, b));
    const Mat da = oracle::dense(a), db = oracle::dense(b);
    CHECK((lhs - (da * db - db * da)).norm() < 1e-11);
    CHECK((oracle::dense(commutator(b, a)) + lhs).norm() < 1e-11);
  }
}

TEST_CASE("adjoint_rotate basics") {
  const PauliSum z = single("Z0", 1, 1);
  CHECK((oracle::dense(adjoint_rotate(z, str("X0"), 0)) - oracle::dense(z)).norm() < 1e-15);

  const PauliSum rotated = adjoint_rotate(z, str("X0"), std::numbers::pi / 4);
  CHECK(rotated.size() == 1);
  CHECK(std::abs(rotated.coeff(str("Y0")) - cplx(1)) < 1e-15);

  // Commuting terms pass through unchanged at any angle.
  const PauliSum zz = single("Z0 Z1", 0.7, 2);
  const PauliSum same = adjoint_rotate(zz, str("Z0", 2), 1.234);
  CHECK(same.coeff(str("Z0 Z1")) == cplx(0.7));
  CHECK(same.size() == 1);
}

TEST_CASE("adjoint_rotate equals dense conjugation on random sums") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 25; ++i) {
    const int n = 2 + int(rng() % 2);
    const PauliSum a = random_sum(n, 5, false, rng);
    const PauliString k = random_string(n, rng);
    const double theta = std::uniform_real_distribution<double>(-3, 3)(rng);
    const Mat u = oracle::expm_i(oracle::dense(k), theta);
    const Mat expect = u * oracle::dense(a) * u.adjoint();
    CHECK((oracle::dense(adjoint_rotate(a, k, theta)) - expect).norm() < 1e-11);
  }
}

TEST_CASE("adjoint_rotate composes additively and preserves inner") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> angle(-2, 2);
  for (int i = 0; i < 20; ++i) {
    const PauliSum a = random_sum(3, 4, true, rng);
    const PauliSum b = random_sum(3, 4, true, rng);
    const PauliString k = random_string(3, rng);
    const double t1 = angle(rng), t2 = angle(rng);

    const PauliSum two_step = adjoint_rotate(adjoint_rotate(a, k, t1), k, t2);
    const PauliSum one_step = adjoint_rotate(a, k, t1 + t2);
    CHECK(norm(two_step + (-1.0) * one_step) < 1e-12);

    CHECK(inner(adjoint_rotate(a, k, t1), adjoint_rotate(b, k, t1)) ==
          doctest::Approx(inner(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("inner examples and positive definiteness") {
  CHECK(inner(single("Z0", 1, 1), single("Z0", 1, 1)) == 1.0);
  CHECK(inner(single("X0", 1, 1), single("Z0", 1, 1)) == 0.0);

  PauliSum mixed(2);
  mixed.add(str("X0", 2), 0.5);
  mixed.add(str("Z0 Z1"), 2.0);
  CHECK(inner(mixed, single("Z0 Z1", 1, 2)) == 2.0);

  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    const PauliSum a = random_sum(3, 4, true, rng);
    if (!a.empty()) CHECK(inner(a, a) > 0);
  }
}

TEST_CASE("trace_dot equals the normalized dense trace") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 20; ++i) {
    const PauliSum a = random_sum(2, 4, false, rng);
    const PauliSum b = random_sum(2, 4, false, rng);
    const cplx expect = (oracle::dense(a) * oracle::dense(b)).trace() / 4.0;
    CHECK(std::abs(trace_dot(a, b) - expect) < 1e-12);
  }
}

TEST_CASE("norm is the coefficient 2-norm") {
  PauliSum a(2);
  a.add(str("X0", 2), 3.0);
  a.add(str("Z0 Z1"), 4.0);
  CHECK(norm(a) == doctest::Approx(5.0));
  CHECK(norm(a) == doctest::Approx(std::sqrt(inner(a, a))));
}

TEST_CASE("add accumulates, cancels and prunes") {
  PauliSum s(1);
  s.add(str("Z0"), 0.5);
  s.add(str("Z0"), 0.25);
  CHECK(s.coeff(str("Z0")) == cplx(0.75));
  s.add(str("Z0"), -0.75);
  CHECK(s.empty());

  s.add(str("X0"), 1e-15);  // below the prune threshold
  CHECK(s.empty());
  s.add(str("X0"), 1.0);
  s.add(str("X0"), cplx(0, 2e-15));  // imaginary dust must not erase the term
  CHECK(s.size() == 1);
}

TEST_CASE("terms iterate in canonical (z_mask, x_mask) order") {
  PauliSum s(2);
  s.add(str("Z0 Z1"), 1.0);
  s.add(str("X0", 2), 1.0);
  s.add(str("Y0", 2), 1.0);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> keys;
  for (const auto& [p, c] : s.terms()) keys.push_back(p.key());
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(keys.front() == str("X0", 2).key());
}

TEST_CASE("adjoint conjugates coefficients and is_real flags imaginary parts") {
  PauliSum s(2);
  s.add(str("X0 Y1"), cplx(1, 2));
  const PauliSum dag = adjoint(s);
  CHECK(dag.coeff(str("X0 Y1")) == cplx(1, -2));
  CHECK_FALSE(is_real(s));
  CHECK(is_real(single("X0 Y1", 1.5, 2)));

  std::mt19937_64 rng(41);
  const PauliSum a = random_sum(2, 4, false, rng);
  CHECK((oracle::dense(adjoint(a)) - oracle::dense(a).adjoint()).norm() < 1e-13);
}

TEST_CASE("sum arithmetic operators") {
  PauliSum a = single("X0", 1.0, 1);
  PauliSum b = single("Z0", 2.0, 1);
  const PauliSum c = a + b;
  CHECK(c.coeff(str("X0")) == cplx(1));
  CHECK(c.coeff(str("Z0")) == cplx(2));
  const PauliSum d = c * cplx(2);
  CHECK(d.coeff(str("Z0")) == cplx(4));
  CHECK((cplx(0, 1) * c).coeff(str("X0")) == cplx(0, 1));
  CHECK_THROWS_AS(a += PauliSum(2), PauliError);
}

TEST_CASE("multiply of sums expands the full product") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 15; ++i) {
    const PauliSum a = random_sum(2, 3, false, rng);
    const PauliSum b = random_sum(2, 3, false, rng);
    CHECK((oracle::dense(multiply(a, b)) - oracle::dense(a) * oracle::dense(b)).norm() < 1e-12);
  }
}
