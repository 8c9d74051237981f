#pragma once

// Seeded generators for test and acceptance inputs.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ppi/numkit.hpp"

namespace ppi::rnd {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive
cplx gaussian(Rng& rng);
cplx unimodular(Rng& rng);

Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);
Vector gaussian_vector(Rng& rng, Eigen::Index n);

/// Haar-distributed unitary (QR of a Gaussian matrix with the phase fix).
Matrix unitary(Rng& rng, Eigen::Index n);

/// Random Hermitian orthogonal projection of the given rank.
Matrix projection(Rng& rng, Eigen::Index n, Eigen::Index rank);

/// U * diag(I_r, 0) * V^* with Haar U, V.
Matrix partial_isometry(Rng& rng, Eigen::Index n, Eigen::Index rank);

/// Truncated-shift block of index k on C^k (subdiagonal identity).
Matrix shift_block(int k);

/// Canonical power partial isometry U (+) copies of J_k, unitary block first
/// and truncated blocks by increasing k, each copy contiguous.
struct CanonicalPpi {
  Matrix canonical;
  Eigen::Index unitary_dim = 0;
  std::vector<std::pair<int, int>> multiplicities;  // (k, m_k), k increasing
};

CanonicalPpi canonical_ppi(const Matrix& unitary_block, const std::vector<std::pair<int, int>>& mult);

/// Random canonical form: unitary block of size u, random multiplicities for
/// indices 1..max_k subject to the total dimension bound.
CanonicalPpi random_canonical_ppi(Rng& rng, Eigen::Index max_dim, int max_k);

}  // namespace ppi::rnd
