#pragma once

// Partial isometries, power partial isometries, the initial/final projection
// calculus and the canonical (unitary + truncated shifts) decomposition.

#include <array>
#include <map>
#include <optional>
#include <string_view>
#include <utility>

#include "ppi/numkit.hpp"

namespace ppi {

/// One residual per equivalent characterization of a partial isometry:
///   0: nonzero singular values of T are 1 (T isometric off its kernel)
///   1: T^* isometric on the orthogonal complement of its kernel
///   2: T^* T T^* = T^*
///   3: T T^* T = T
///   4: T T^* is the orthogonal projection onto R(T)
///   5: T^* T is the orthogonal projection onto R(T^*)
struct PartialIsometryReport {
  static constexpr std::size_t kCriteria = 6;
  static constexpr std::array<std::string_view, kCriteria> kNames = {
      "isometric_on_initial_space", "adjoint_isometric_on_initial_space",
      "adjoint_identity",           "identity",
      "final_projection",           "initial_projection"};

  bool is_pi = false;
  std::array<double, kCriteria> residuals{};
  std::array<bool, kCriteria> verdicts{};

  /// All six verdicts coincide.
  bool agree() const noexcept;
  double worst() const noexcept;
};

PartialIsometryReport is_partial_isometry(const Matrix& t, const Tol& tol = {});

struct PowerReport {
  bool is_ppi = false;
  std::optional<int> first_failing_power;
};

/// Checks T^n for n = 1..d+1.
PowerReport is_power_partial_isometry(const Matrix& t, const Tol& tol = {});

struct DefectProjections {
  Matrix initial;  // E_n = T^{*n} T^n
  Matrix final;    // F_n = T^n T^{*n}
};

/// Throws NotPPI when some power up to n fails to be a partial isometry.
DefectProjections defect_projections(const Matrix& t, int n, const Tol& tol = {});

struct ProjectionCalculusReport {
  double commute_initial_final_each = 0;  // E_k E_l = E_l E_k and F_k F_l = F_l F_k
  double commute_initial_final = 0;       // E_k F_l = F_l E_k
  double products_are_projections = 0;    // E_k F_l and E_k E_l are projections
  double shift_initial = 0;               // T E_{k+1} = E_k T
  double shift_final = 0;                 // T F_k = F_{k+1} T

  double worst() const noexcept;
};

/// Residuals of the projection calculus for 0 <= k, l <= max_k.
ProjectionCalculusReport projection_calculus_check(const Matrix& t, int max_k, const Tol& tol = {});

/// T^{n-1}(N(T^*)) intersected with T^{*(k-n)}(N(T)), for 1 <= n <= k.
Subspace slot_subspace(const Matrix& t, int k, int n, const Tol& tol = {});

/// Gap between R(F_{p-1} - F_p) and T^{p-1}(N(T^*)).
double burdak_identity_check(const Matrix& t, int p, const Tol& tol = {});

struct Decomposition {
  Eigen::Index unitary_dim = 0;
  /// Always zero in finite dimension; reported explicitly.
  Eigen::Index unilateral_shift_dim = 0;
  Eigen::Index backward_shift_dim = 0;
  std::map<int, Eigen::Index> multiplicities;  // k -> m_k
  Matrix conjugator;                           // unitary Q, columns = adapted basis
  Matrix canonical;                            // U (+) copies of J_k
  double residual = 0;                         // ||Q^* T Q - canonical||
  double unitarity_defect = 0;                 // ||Q^* Q - I||
};

/// Throws NotPPI, or ResidualExceeded if the recovered pieces do not
/// reassemble the ambient space.
Decomposition hw_decompose(const Matrix& t, const Tol& tol = {});

namespace detail {
/// Unchecked variants used after the power-partial-isometry check passed.
Subspace slot_subspace_unchecked(const Matrix& t, int k, int n, const Tol& tol);
}  // namespace detail

}  // namespace ppi
