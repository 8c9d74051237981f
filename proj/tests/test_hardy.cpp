#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ppi/beurling.hpp"
#include "ppi/hardy.hpp"
#include "ppi/random.hpp"

using namespace ppi;

namespace {

Symbol z_power(int n) { return Symbol::monomial(identity(1), n); }

// Brute-force product of two Laurent polynomials, for the convolution oracle.
cplx poly_coeff(const std::vector<cplx>& a, int a_lo, const std::vector<cplx>& b, int b_lo, int m) {
  cplx s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (a_lo + static_cast<int>(i) + b_lo + static_cast<int>(j) == m) s += a[i] * b[j];
  return s;
}

}  // namespace

TEST_CASE("toeplitz examples") {
  Matrix shift = Matrix::Zero(4, 4);
  for (int i = 1; i < 4; ++i) shift(i, i - 1) = 1.0;
  CHECK(op_norm(toeplitz(z_power(1), 3, 3) - shift) == 0.0);
  CHECK(op_norm(toeplitz(Symbol::constant(identity(2)), 2, 2) - identity(6)) == 0.0);

  rnd::Rng rng(1);
  const Matrix p0 = rnd::gaussian_matrix(rng, 2, 2), p1 = rnd::gaussian_matrix(rng, 2, 2);
  const Matrix t = toeplitz(Symbol(2, 2, 0, {p0, p1}), 2, 2);
  Matrix want = Matrix::Zero(6, 6);
  for (int j = 0; j < 3; ++j) want.block(2 * j, 2 * j, 2, 2) = p0;
  for (int j = 1; j < 3; ++j) want.block(2 * j, 2 * (j - 1), 2, 2) = p1;
  CHECK(op_norm(t - want) == 0.0);
}

TEST_CASE("hankel examples") {
  CHECK(op_norm(hankel(z_power(1), 3, 3)) == 0.0);
  const cplx c(0.3, -0.7);
  const Matrix h = hankel(Symbol::scalar(-1, {c}), 2, 2);
  for (int j = 0; j < 3; ++j)
    for (int m = 0; m < 3; ++m) CHECK(h(j, m) == (j + m == 1 ? c : cplx(0)));
  const Matrix h0 = hankel(Symbol::scalar(0, {c}), 2, 2);
  CHECK(h0(0, 0) == c);
  CHECK(std::abs(h0.sum() - c) == 0.0);
}

TEST_CASE("symbol arithmetic against polynomial convolution") {
  rnd::Rng rng(2);
  for (int s = 0; s < 20; ++s) {
    const int alo = rnd::uniform_int(rng, -3, 2), blo = rnd::uniform_int(rng, -3, 2);
    std::vector<cplx> a(static_cast<std::size_t>(rnd::uniform_int(rng, 1, 4)));
    std::vector<cplx> b(static_cast<std::size_t>(rnd::uniform_int(rng, 1, 4)));
    for (auto& x : a) x = rnd::gaussian(rng);
    for (auto& x : b) x = rnd::gaussian(rng);
    const Symbol p = Symbol::scalar(alo, a) * Symbol::scalar(blo, b);
    for (int m = alo + blo - 1; m <= alo + blo + 8; ++m)
      CHECK(std::abs(p.coeff(m)(0, 0) - poly_coeff(a, alo, b, blo, m)) < 1e-12);
  }
}

TEST_CASE("toeplitz of a product is the product of toeplitz matrices for analytic symbols") {
  rnd::Rng rng(3);
  const Symbol a(2, 2, 0, {rnd::gaussian_matrix(rng, 2, 2), rnd::gaussian_matrix(rng, 2, 2)});
  const Symbol b(2, 2, 0, {rnd::gaussian_matrix(rng, 2, 2), rnd::gaussian_matrix(rng, 2, 2)});
  CHECK(op_norm(toeplitz(a * b, 5, 5) - toeplitz(a, 5, 5) * toeplitz(b, 5, 5)) < 1e-12);
}

TEST_CASE("tilde and boundary adjoint") {
  rnd::Rng rng(4);
  const Symbol s(2, 3, -1, {rnd::gaussian_matrix(rng, 2, 3), rnd::gaussian_matrix(rng, 2, 3)});
  const Symbol t = s.tilde();
  const Symbol b = s.boundary_adjoint();
  for (int m = -2; m <= 2; ++m) {
    CHECK(op_norm(t.coeff(m) - adj(s.coeff(m))) == 0.0);
    CHECK(op_norm(b.coeff(m) - adj(s.coeff(-m))) == 0.0);
  }
}

TEST_CASE("is_inner examples") {
  CHECK(is_inner(Symbol::scalar(0, {0, 0, std::polar(1.0, 0.4)})));
  const auto chk = isometric_check(Symbol::scalar(0, {0.5, 0.5}));
  CHECK_FALSE(chk.ok);
  CHECK(chk.residual == doctest::Approx(0.5));
  CHECK_FALSE(is_inner(Symbol::scalar(0, {0.5, 0.5})));
  rnd::Rng rng(5);
  for (int r = 0; r <= 3; ++r) CHECK(is_inner(potapov_product({rnd::projection(rng, 3, r)})));
  CHECK(is_inner(potapov_product({rnd::projection(rng, 3, 1), rnd::projection(rng, 3, 2)})));
  // Isometric but not analytic.
  CHECK_FALSE(is_inner(z_power(-1)));
}

TEST_CASE("monomial_certificate") {
  const auto c3 = monomial_certificate(z_power(3));
  CHECK(c3.degree == 3);
  CHECK(std::abs(c3.coefficient - cplx(1.0)) < 1e-15);

  const cplx ph = std::polar(1.0, 1.1);
  const auto c0 = monomial_certificate(Symbol::scalar(0, {ph}));
  CHECK(c0.degree == 0);
  CHECK(std::abs(c0.coefficient - ph) < 1e-15);

  const double r = 1.0 / std::sqrt(2.0);
  try {
    monomial_certificate(Symbol::scalar(0, {r, r}));
    FAIL("expected NotInnerError");
  } catch (const NotInnerError& e) {
    CHECK(e.lag() == 1);
    CHECK(e.residual() == doctest::Approx(0.5));
  }
  CHECK_THROWS_AS(monomial_certificate(Symbol::constant(identity(2))), Error);
  CHECK_THROWS_AS(monomial_certificate(z_power(-2)), Error);
}

TEST_CASE("zero_order") {
  CHECK(zero_order(Symbol::scalar(0, {0, 0, 2})) == 2);
  CHECK(!zero_order(Symbol::zero(1, 1)).has_value());
}

TEST_CASE("jk_matrix examples") {
  CHECK(op_norm(jk_matrix(3, 1)) == 0.0);
  CHECK(jk_matrix(3, 1).rows() == 3);
  Matrix j3 = Matrix::Zero(3, 3);
  j3(1, 0) = j3(2, 1) = 1.0;
  CHECK(op_norm(jk_matrix(1, 3) - j3) == 0.0);
  Matrix j22 = Matrix::Zero(4, 4);
  j22.block(2, 0, 2, 2) = identity(2);
  CHECK(op_norm(jk_matrix(2, 2) - j22) == 0.0);
  CHECK_THROWS_AS(jk_matrix(1, 0), Error);
}

TEST_CASE("model_projection examples") {
  CHECK(op_norm(model_projection({2, 4}, 3) - identity(8)) == 0.0);
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 1.0;
  CHECK(op_norm(model_projection({1, 1}, 2) - d) == 0.0);
  Matrix d2 = Matrix::Zero(8, 8);
  d2.topLeftCorner(4, 4) = identity(4);
  CHECK(op_norm(model_projection({2, 2}, 3) - d2) == 0.0);
  CHECK_THROWS_AS(model_projection({1, 5}, 2), Error);
}

TEST_CASE("nagy_embedding examples") {
  const Matrix pi = nagy_embedding(jk_matrix(1, 2), 1);
  CHECK(op_norm(adj(pi) * pi - identity(2)) < 1e-14);
  // The first slot lands in degree 0, its image under J_2 in degree 1.
  CHECK(pi.rows() == 4);

  rnd::Rng rng(6);
  CHECK(op_norm(nagy_embedding(rnd::unitary(rng, 3), 4)) < 1e-7);

  const Matrix half = 0.5 * jk_matrix(1, 2);
  const Matrix p8 = nagy_embedding(half, 8);
  CHECK(op_norm(adj(p8) * p8 - identity(2)) < 1e-12);
}

TEST_CASE("nagy embedding intertwines T^* with the backward shift") {
  rnd::Rng rng(8);
  const Matrix t = 0.6 * rnd::gaussian_matrix(rng, 3, 3) / op_norm(rnd::gaussian_matrix(rng, 3, 3));
  const Matrix tc = t / (op_norm(t) * 1.25);
  const int n = 6;
  const Matrix pi = nagy_embedding(tc, n);
  const Matrix back = adj(shift_matrix(3, n));
  // Exact on degrees 0..N-1.
  const Matrix lhs = (pi * adj(tc)).topRows(3 * n);
  const Matrix rhs = (back * pi).topRows(3 * n);
  CHECK(op_norm(lhs - rhs) < 1e-12);
  CHECK_THROWS_AS(nagy_embedding(2.0 * identity(2), 3), Error);
}

TEST_CASE("bad degrees and shapes") {
  CHECK_THROWS_AS(toeplitz(z_power(1), -1, 2), Error);
  CHECK_THROWS_AS(Symbol(2, 2, 0, {identity(3)}), Error);
  CHECK_THROWS_AS(Symbol::stack({Symbol::zero(1, 2), Symbol::zero(1, 3)}), Error);
}
