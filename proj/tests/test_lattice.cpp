#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "ppi/hardy.hpp"
#include "ppi/lattice.hpp"
#include "ppi/random.hpp"

using namespace ppi;

namespace {

using Parts = std::vector<std::pair<int, Eigen::Index>>;

// Brute-force admissibility straight from the pairwise rule.
bool admissible_oracle(const Parts& parts, const std::vector<int>& n) {
  for (std::size_t a = 0; a < parts.size(); ++a) {
    if (n[a] < 0 || n[a] > parts[a].first) return false;
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      if (n[a] > n[b]) return false;
      if (n[b] - n[a] > parts[b].first - parts[a].first) return false;
    }
  }
  return true;
}

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("commutant_basis examples") {
  CHECK(commutant_basis(identity(3)).size() == 9);
  const auto b = commutant_basis(jk_matrix(1, 3));
  CHECK(b.size() == 3);
  // Every element is a polynomial in J_3: lower-triangular Toeplitz.
  for (const auto& s : b) {
    CHECK(std::abs(s(0, 1)) + std::abs(s(0, 2)) + std::abs(s(1, 2)) < 1e-12);
    CHECK(std::abs(s(0, 0) - s(1, 1)) < 1e-12);
    CHECK(std::abs(s(1, 1) - s(2, 2)) < 1e-12);
    CHECK(std::abs(s(1, 0) - s(2, 1)) < 1e-12);
  }
  CHECK(commutant_basis(diag2(1, 2)).size() == 2);
}

TEST_CASE("intertwiner_basis examples") {
  const Matrix j3 = jk_matrix(1, 3);
  CHECK(intertwiner_basis(j3, j3).size() == commutant_basis(j3).size());
  const auto b = intertwiner_basis(jk_matrix(1, 2), j3);
  CHECK(b.size() == 2);
  for (const auto& s : b) {
    CHECK(s.rows() == 3);
    CHECK(s.cols() == 2);
    // Zero top row, lower-triangular Toeplitz below.
    CHECK(std::abs(s(0, 0)) + std::abs(s(0, 1)) < 1e-12);
    CHECK(std::abs(s(1, 1)) < 1e-12);
    CHECK(std::abs(s(1, 0) - s(2, 1)) < 1e-12);
    CHECK(op_norm(s * jk_matrix(1, 2) - j3 * s) < 1e-12);
  }
  CHECK(intertwiner_basis(j3, identity(3)).empty());
}

TEST_CASE("model_intertwiner matches the computed intertwiner space") {
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      const auto basis = intertwiner_basis(jk_matrix(1, j), jk_matrix(1, i));
      CHECK(basis.size() == static_cast<std::size_t>(std::min(i, j)));
      std::vector<cplx> theta(static_cast<std::size_t>(std::min(i, j)));
      for (std::size_t t = 0; t < theta.size(); ++t) theta[t] = cplx(1.0 + t, -0.5 * t);
      const Matrix s = model_intertwiner(i, j, theta);
      CHECK(op_norm(s * jk_matrix(1, j) - jk_matrix(1, i) * s) < 1e-14);
    }
}

TEST_CASE("is_invariant examples") {
  const Matrix j3 = jk_matrix(1, 3);
  CHECK(is_invariant(Subspace::full(3), j3).flag);
  CHECK(is_invariant(Subspace::coordinate(3, {1, 2}), j3).flag);
  const auto r = is_invariant(Subspace::coordinate(3, {0}), j3);
  CHECK_FALSE(r.flag);
  CHECK(r.residual == doctest::Approx(1.0));
  CHECK_THROWS_AS(is_invariant(Subspace::full(2), j3), Error);
}

TEST_CASE("is_reducing") {
  Matrix b(2, 1);
  b << 1, 1;
  const Subspace s(2, b / std::sqrt(2.0));
  CHECK(is_reducing(tensor_with_ck(s, 3), jk_matrix(2, 3)));
  CHECK_FALSE(is_reducing(Subspace::coordinate(3, {1, 2}), jk_matrix(1, 3)));
}

TEST_CASE("is_hyperinvariant examples") {
  const Matrix j3 = jk_matrix(1, 3);
  CHECK(is_hyperinvariant(Subspace::coordinate(3, {1, 2}), j3).flag);
  CHECK(is_hyperinvariant(Subspace::zero(3), j3).flag);
  // J_1 (+) J_4 with chain (1, 0): n_1 > n_4 is inadmissible.
  const Chain bad{{{1, 1}, {4, 1}}, {1, 0}};
  const Matrix t = chain_operator(bad.parts);
  const auto h = is_hyperinvariant(chain_subspace(bad), t);
  CHECK_FALSE(h.flag);
  REQUIRE(h.witness);
  CHECK(op_norm(*h.witness * t - t * *h.witness) < 1e-10);
  CHECK(is_invariant(chain_subspace(bad), *h.witness).residual > 1e-3);
}

TEST_CASE("cyclic_hyperinvariant examples") {
  const Matrix j3 = jk_matrix(1, 3);
  Vector e1 = Vector::Zero(3), e3 = Vector::Zero(3);
  e1(0) = 1.0;
  e3(2) = 1.0;
  CHECK(cyclic_hyperinvariant(e1, j3).rank() == 3);
  CHECK(subspace_gap(cyclic_hyperinvariant(e3, j3), Subspace::coordinate(3, {2})) < 1e-12);
  CHECK(cyclic_hyperinvariant(Vector::Zero(3), j3).is_zero());
}

TEST_CASE("reducing_factor_jk examples") {
  CHECK(reducing_factor_jk(Subspace::full(6), 2, 3).rank() == 2);
  CHECK(reducing_factor_jk(Subspace::zero(6), 2, 3).is_zero());
  Matrix b(2, 1);
  b << 1, 1;
  const Subspace s(2, b / std::sqrt(2.0));
  CHECK(subspace_gap(reducing_factor_jk(tensor_with_ck(s, 3), 2, 3), s) < 1e-12);
  try {
    reducing_factor_jk(Subspace::coordinate(6, {4, 5}), 2, 3);
    FAIL("expected NotReducing");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotReducing);
  }
}

TEST_CASE("enumerate_admissible_chains examples") {
  for (int k = 1; k <= 5; ++k) CHECK(enumerate_admissible_chains({{k, 1}}).size() == static_cast<std::size_t>(k + 1));
  const auto c12 = enumerate_admissible_chains({{1, 1}, {2, 1}});
  std::set<std::vector<int>> got;
  for (const auto& c : c12) got.insert(c.values);
  CHECK(got == std::set<std::vector<int>>{{0, 0}, {0, 1}, {1, 1}, {1, 2}});
  CHECK(enumerate_admissible_chains({}).size() == 1);
}

TEST_CASE("admissible chains match the brute-force rule") {
  const std::vector<Parts> cases = {{{1, 1}, {3, 1}}, {{2, 2}, {3, 1}, {5, 1}}, {{1, 1}, {2, 1}, {3, 1}, {4, 1}}};
  for (const auto& parts : cases) {
    std::size_t expected = 0;
    for (const auto& c : enumerate_all_chains(parts)) {
      const bool want = admissible_oracle(parts, c.values);
      CHECK(is_admissible(c) == want);
      CHECK(admissibility_violation(c).has_value() == !want);
      if (want) ++expected;
    }
    CHECK(enumerate_admissible_chains(parts).size() == expected);
  }
}

TEST_CASE("chain_subspace examples") {
  const Parts parts{{2, 1}, {3, 1}};
  CHECK(chain_subspace(Chain{parts, {0, 0}}).is_zero());
  CHECK(chain_subspace(Chain{parts, {2, 3}}).rank() == 5);
  const Subspace m = chain_subspace(Chain{parts, {1, 2}});
  CHECK(m.rank() == 3);
  const Matrix t = chain_operator(parts);
  const Subspace want = direct_sum_subspaces(
      {kernel(jk_matrix(1, 2), {}, Cutoff::unit), kernel(matrix_power(jk_matrix(1, 3), 2), {}, Cutoff::unit)});
  CHECK(subspace_gap(m, want) < 1e-12);
  CHECK(is_invariant(m, t).flag);
}

TEST_CASE("chain witnesses commute and move the subspace") {
  const Parts parts{{1, 1}, {2, 2}, {4, 1}};
  for (const auto& c : enumerate_all_chains(parts)) {
    if (is_admissible(c)) continue;
    const Matrix w = chain_witness(c);
    const Matrix t = chain_operator(parts);
    CHECK(op_norm(w * t - t * w) < 1e-14);
    CHECK(is_invariant(chain_subspace(c), w).residual == doctest::Approx(1.0));
  }
}

TEST_CASE("normalize_parts") {
  const auto p = normalize_parts({{3, 1}, {1, 2}, {3, 2}, {2, 0}});
  CHECK(p == Parts{{1, 2}, {3, 3}});
  CHECK_THROWS_AS(normalize_parts({{0, 1}}), Error);
  CHECK_THROWS_AS(normalize_parts({{1, -1}}), Error);
}

TEST_CASE("joint commutant of J_k and its adjoint is I (x) M_e") {
  for (int e = 1; e <= 3; ++e)
    for (int k = 1; k <= 3; ++k) {
      const Matrix j = jk_matrix(e, k);
      CHECK(joint_commutant_basis({j, adj(j)}).size() == static_cast<std::size_t>(e * e));
    }
}
