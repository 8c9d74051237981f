#pragma once

// Commutants, intertwiners, invariance predicates and the chain lattice of
// hyperinvariant subspaces for direct sums of truncated shifts.

#include <optional>
#include <utility>
#include <vector>

#include "ppi/numkit.hpp"

namespace ppi {

/// Frobenius-orthonormal basis of {S : S T1 = T2 S} (S is rows(T2) x rows(T1)).
/// Deterministic: read off the right singular vectors of the Kronecker system.
std::vector<Matrix> intertwiner_basis(const Matrix& t1, const Matrix& t2, const Tol& tol = {});

/// intertwiner_basis(t, t).
std::vector<Matrix> commutant_basis(const Matrix& t, const Tol& tol = {});

/// Common commutant of a family: {S : S T_i = T_i S for all i}.
std::vector<Matrix> joint_commutant_basis(const std::vector<Matrix>& ts, const Tol& tol = {});

struct InvarianceResult {
  bool flag = false;
  double residual = 0;
};

/// ||(I - P_M) T P_M||.
InvarianceResult is_invariant(const Subspace& m, const Matrix& t, const Tol& tol = {});
bool is_reducing(const Subspace& m, const Matrix& t, const Tol& tol = {});

struct HyperResult {
  bool flag = false;
  double worst_residual = 0;
  std::optional<Matrix> witness;  // commutant element with the largest residual
};

HyperResult is_hyperinvariant(const Subspace& m, const Matrix& t, const Tol& tol = {});

/// Same sweep against a precomputed commutant basis.
HyperResult hyperinvariance_sweep(const Subspace& m, const std::vector<Matrix>& basis, const Tol& tol = {});

/// Smallest subspace containing x and invariant under the commutant of T.
Subspace cyclic_hyperinvariant(const Vector& x, const Matrix& t, const Tol& tol = {});
Subspace cyclic_closure(const Vector& x, const std::vector<Matrix>& basis, const Tol& tol = {});

/// S with M = S (x) C^k for a subspace reducing jk_matrix(coeff_dim, k).
Subspace reducing_factor_jk(const Subspace& m, Eigen::Index coeff_dim, int k, const Tol& tol = {});

/// S (x) C^k in the degree-major basis.
Subspace tensor_with_ck(const Subspace& s, int k);

struct Chain {
  std::vector<std::pair<int, Eigen::Index>> parts;  // (k, m_k), k increasing, m_k > 0
  std::vector<int> values;                          // n_k per part
};

/// Sorts by k, merges duplicates and drops zero multiplicities. Throws BadSpec
/// on k < 1 or negative multiplicity.
std::vector<std::pair<int, Eigen::Index>> normalize_parts(std::vector<std::pair<int, Eigen::Index>> parts);

/// For present i < j: n_i <= n_j and n_j - n_i <= j - i; each 0 <= n_k <= k.
bool is_admissible(const Chain& chain);

/// First offending pair of part positions (a, b), a < b, or a single part
/// with n out of range (a == b).
std::optional<std::pair<std::size_t, std::size_t>> admissibility_violation(const Chain& chain);

std::vector<Chain> enumerate_admissible_chains(const std::vector<std::pair<int, Eigen::Index>>& parts);

/// All value assignments 0 <= n_k <= k, admissible or not.
std::vector<Chain> enumerate_all_chains(const std::vector<std::pair<int, Eigen::Index>>& parts);

/// Direct sum of jk_matrix(m_k, k) over the parts, in increasing k.
Matrix chain_operator(const std::vector<std::pair<int, Eigen::Index>>& parts);

Eigen::Index chain_ambient_dim(const std::vector<std::pair<int, Eigen::Index>>& parts);

/// (+)_k N(J_k^{n_k}): in each block the top n_k degrees.
Subspace chain_subspace(const Chain& chain);

/// Explicit intertwiner from the index-j block to the index-i block of the
/// scalar model, J_i S = S J_j, lower-triangular Toeplitz padded as needed;
/// `theta` lists the free coefficients theta_1..theta_min(i,j).
Matrix model_intertwiner(int i, int j, const std::vector<cplx>& theta);

/// Witness for an inadmissible chain: an element of the commutant of
/// chain_operator that moves chain_subspace off itself (residual 1 when the
/// violation is built from the coordinate intertwiners).
Matrix chain_witness(const Chain& chain);

}  // namespace ppi
