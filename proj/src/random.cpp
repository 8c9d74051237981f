#include "ppi/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ppi::rnd {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

cplx gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

cplx unimodular(Rng& rng) { return std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi)); }

Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = gaussian(rng);
  return m;
}

Vector gaussian_vector(Rng& rng, Eigen::Index n) { return gaussian_matrix(rng, n, 1).col(0); }

Matrix unitary(Rng& rng, Eigen::Index n) {
  if (n == 0) return Matrix(0, 0);
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(rng, n, n));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Matrix projection(Rng& rng, Eigen::Index n, Eigen::Index rank) {
  const Matrix u = unitary(rng, n).leftCols(rank);
  return u * u.adjoint();
}

Matrix partial_isometry(Rng& rng, Eigen::Index n, Eigen::Index rank) {
  Matrix d = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < rank; ++i) d(i, i) = 1.0;
  return unitary(rng, n) * d * unitary(rng, n).adjoint();
}

Matrix shift_block(int k) {
  Matrix j = Matrix::Zero(k, k);
  for (int i = 1; i < k; ++i) j(i, i - 1) = 1.0;
  return j;
}

CanonicalPpi canonical_ppi(const Matrix& unitary_block, const std::vector<std::pair<int, int>>& mult) {
  auto sorted = mult;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Matrix> blocks{unitary_block};
  CanonicalPpi out;
  out.unitary_dim = unitary_block.rows();
  for (const auto& [k, m] : sorted) {
    if (m <= 0) continue;
    for (int c = 0; c < m; ++c) blocks.push_back(shift_block(k));
    out.multiplicities.emplace_back(k, m);
  }
  out.canonical = direct_sum(blocks);
  return out;
}

CanonicalPpi random_canonical_ppi(Rng& rng, Eigen::Index max_dim, int max_k) {
  Eigen::Index budget = uniform_int(rng, 1, static_cast<int>(max_dim));
  const Eigen::Index u = uniform_int(rng, 0, static_cast<int>(budget / 3));
  budget -= u;
  Matrix ub = Matrix::Zero(u, u);
  if (u > 0) {
    // Unitary with distinct, well separated spectrum in a random basis.
    const Matrix w = unitary(rng, u);
    Matrix diag = Matrix::Zero(u, u);
    for (Eigen::Index i = 0; i < u; ++i) diag(i, i) = unimodular(rng);
    ub = w * diag * w.adjoint();
  }
  std::vector<std::pair<int, int>> mult;
  std::vector<int> counts(static_cast<std::size_t>(max_k) + 1, 0);
  while (budget > 0) {
    const int k = uniform_int(rng, 1, static_cast<int>(std::min<Eigen::Index>(max_k, budget)));
    counts[static_cast<std::size_t>(k)]++;
    budget -= k;
    if (uniform(rng) < 0.15) break;
  }
  for (int k = 1; k <= max_k; ++k)
    if (counts[static_cast<std::size_t>(k)] > 0) mult.emplace_back(k, counts[static_cast<std::size_t>(k)]);
  return canonical_ppi(ub, mult);
}

}  // namespace ppi::rnd
