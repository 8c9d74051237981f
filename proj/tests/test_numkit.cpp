#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ppi/numkit.hpp"
#include "ppi/random.hpp"

using namespace ppi;

namespace {

Matrix m2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Subspace line(Eigen::Index n, std::initializer_list<cplx> v) {
  Matrix b(n, 1);
  Eigen::Index i = 0;
  for (auto x : v) b(i++, 0) = x;
  b /= b.norm();
  return Subspace(n, b);
}

}  // namespace

TEST_CASE("orthonormal_range") {
  CHECK(orthonormal_range(identity(2)).rank() == 2);
  CHECK(orthonormal_range(Matrix::Zero(3, 3)).rank() == 0);
  const Subspace r = orthonormal_range(m2(1, 1, 1, 1));
  CHECK(r.rank() == 1);
  CHECK(subspace_gap(r, line(2, {1, 1})) < 1e-12);
}

TEST_CASE("kernel") {
  CHECK(kernel(identity(2)).is_zero());
  const Subspace k = kernel(m2(0, 0, 1, 0));
  CHECK(k.rank() == 1);
  CHECK(subspace_gap(k, Subspace::coordinate(2, {1})) < 1e-12);
  CHECK(subspace_gap(kernel(m2(1, 1, 1, 1)), line(2, {1, -1})) < 1e-12);
}

TEST_CASE("kernel of a large degenerate system stays orthonormal") {
  // 16x16 rank-7 projection: a case where divide-and-conquer SVD goes wrong.
  rnd::Rng rng(1);
  for (int r = 0; r <= 16; ++r) {
    const Matrix p = rnd::projection(rng, 16, r);
    const Subspace k = kernel(p);
    const Subspace g = orthonormal_range(p);
    CHECK(k.rank() == 16 - r);
    CHECK(g.rank() == r);
    CHECK(orthonormality_defect(k) < 1e-12);
    if (r > 0) CHECK(op_norm(project(g) - p) < 1e-10);
  }
}

TEST_CASE("intersect") {
  const Subspace s = line(3, {1, 2, 3});
  CHECK(subspace_gap(intersect(s, s), s) < 1e-12);
  CHECK(intersect(Subspace::coordinate(2, {0}), Subspace::coordinate(2, {1})).is_zero());
  const Subspace i = intersect(Subspace::coordinate(3, {0, 1}), Subspace::coordinate(3, {1, 2}));
  CHECK(i.rank() == 1);
  CHECK(subspace_gap(i, Subspace::coordinate(3, {1})) < 1e-12);
}

TEST_CASE("span and complement") {
  const Subspace a = Subspace::coordinate(3, {0});
  const Subspace b = Subspace::coordinate(3, {2});
  CHECK(subspace_gap(span(a, b), Subspace::coordinate(3, {0, 2})) < 1e-12);
  CHECK(subspace_gap(complement(span(a, b)), Subspace::coordinate(3, {1})) < 1e-12);
  CHECK(complement(Subspace::full(4)).is_zero());
}

TEST_CASE("subspace_gap") {
  const Subspace s = line(2, {1, 0});
  CHECK(subspace_gap(s, s) == doctest::Approx(0.0));
  CHECK(subspace_gap(s, line(2, {0, 1})) == doctest::Approx(1.0));
  CHECK(subspace_gap(s, line(2, {1, 1})) == doctest::Approx(std::sin(M_PI / 4)).epsilon(1e-12));
}

TEST_CASE("project") {
  CHECK(op_norm(project(Subspace::full(3)) - identity(3)) < 1e-14);
  CHECK(op_norm(project(Subspace::zero(3))) == 0.0);
  CHECK(op_norm(project(line(2, {1, 1})) - m2(0.5, 0.5, 0.5, 0.5)) < 1e-14);
}

TEST_CASE("op_norm against singular values") {
  rnd::Rng rng(7);
  for (int n : {1, 3, 9, 20}) {
    const Matrix a = rnd::gaussian_matrix(rng, n, n + 2);
    Eigen::JacobiSVD<Matrix> svd(a);
    CHECK(op_norm(a) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
  }
  CHECK(op_norm(Matrix(0, 0)) == 0.0);
  // Relative accuracy survives at tiny scale.
  const Matrix tiny = 1e-13 * identity(4);
  CHECK(op_norm(tiny) == doctest::Approx(1e-13).epsilon(1e-6));
}

TEST_CASE("tolerances validate") {
  CHECK_NOTHROW(Tol{}.validate());
  CHECK_THROWS_AS((Tol{0.0, 1e-8}.validate()), Error);
  CHECK_THROWS_AS((Tol{1e-10, -1.0}.validate()), Error);
}

TEST_CASE("subspace construction checks") {
  CHECK_THROWS_AS(Subspace(3, Matrix::Ones(3, 1)), Error);
  CHECK_THROWS_AS(Subspace(2, identity(3)), Error);
  CHECK_THROWS_AS(Subspace::coordinate(2, {5}), Error);
}

TEST_CASE("direct sums and block components") {
  const Subspace a = line(2, {1, 1});
  const Subspace b = Subspace::full(1);
  const Subspace s = direct_sum_subspaces({a, b});
  CHECK(s.ambient_dim() == 3);
  CHECK(s.rank() == 2);
  CHECK(subspace_gap(block_component(s, 0, 2), a) < 1e-12);
  CHECK(subspace_gap(block_component(s, 2, 1), b) < 1e-12);
  const Matrix d = direct_sum({identity(2), 2.0 * identity(1)});
  CHECK(d(2, 2) == cplx(2.0));
  CHECK(d(0, 2) == cplx(0.0));
}

TEST_CASE("matrix_power") {
  Matrix j = Matrix::Zero(3, 3);
  j(1, 0) = j(2, 1) = 1.0;
  CHECK(op_norm(matrix_power(j, 0) - identity(3)) == 0.0);
  CHECK(op_norm(matrix_power(j, 3)) == 0.0);
  CHECK(matrix_power(j, 2)(2, 0) == cplx(1.0));
}
