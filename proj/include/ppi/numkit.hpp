#pragma once

// Tolerance-aware dense complex linear algebra and subspace arithmetic.
//
// Every operator in the library is carried as a dense complex matrix; every
// closed subspace is carried by an orthonormal basis. Rank decisions are
// made from singular values against a cutoff relative to the largest one.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "ppi/error.hpp"

namespace ppi {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Tol {
  double rank_rel = 1e-10;
  double residual_abs = 1e-8;

  /// Throws BadTolerance unless both are positive and rank_rel < 1.
  void validate() const;
};

/// Default subspace-equality threshold on the projector gap.
inline constexpr double kGapTol = 1e-8;

/// Lower bound for the reference scale of a rank decision. `relative` is the
/// pure relative cutoff (rank_rel * sigma_max). `unit` additionally floors the
/// reference scale at 1, which is the natural scale for stacks of projectors
/// and for partial isometries whose nonzero singular values are all 1.
enum class Cutoff { relative, unit };

class Subspace {
 public:
  /// Zero subspace of C^0.
  Subspace() = default;

  /// `basis` must have orthonormal columns; this is checked to 1e-8.
  Subspace(Eigen::Index ambient_dim, Matrix basis);

  static Subspace zero(Eigen::Index ambient_dim);
  static Subspace full(Eigen::Index ambient_dim);
  /// Span of the given coordinate axes.
  static Subspace coordinate(Eigen::Index ambient_dim, const std::vector<Eigen::Index>& axes);

  Eigen::Index ambient_dim() const noexcept { return ambient_dim_; }
  Eigen::Index rank() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }
  bool is_zero() const noexcept { return basis_.cols() == 0; }

 private:
  Eigen::Index ambient_dim_ = 0;
  Matrix basis_ = Matrix(0, 0);
};

// ---- scalar helpers -------------------------------------------------------

/// Spectral norm (largest singular value); 0 for empty matrices.
double op_norm(const Matrix& a);

void require_finite(const Matrix& a, const char* what);
void require_square(const Matrix& a, const char* what);

/// Conjugate-transpose, materialized.
inline Matrix adj(const Matrix& a) { return a.adjoint(); }

Matrix identity(Eigen::Index n);

/// a^n for n >= 0.
Matrix matrix_power(const Matrix& a, int n);

/// Block-diagonal direct sum.
Matrix direct_sum(const std::vector<Matrix>& blocks);

// ---- subspace operations --------------------------------------------------

Subspace orthonormal_range(const Matrix& a, const Tol& tol = {}, Cutoff cut = Cutoff::relative);
Subspace kernel(const Matrix& a, const Tol& tol = {}, Cutoff cut = Cutoff::relative);

/// Number of singular values above the cutoff.
Eigen::Index numerical_rank(const Matrix& a, const Tol& tol = {}, Cutoff cut = Cutoff::relative);

/// Intersection via the kernel of the stacked complementary projectors.
Subspace intersect(const Subspace& s1, const Subspace& s2, const Tol& tol = {});

/// Closed span of the union.
Subspace span(const Subspace& s1, const Subspace& s2, const Tol& tol = {});

/// Orthogonal complement in the ambient space.
Subspace complement(const Subspace& s, const Tol& tol = {});

/// Image of `s` under `a`.
Subspace image(const Matrix& a, const Subspace& s, const Tol& tol = {}, Cutoff cut = Cutoff::relative);

/// ||P1 - P2||; 0 iff equal subspaces.
double subspace_gap(const Subspace& s1, const Subspace& s2);

/// Equal ranks and gap <= gap_tol.
bool same_subspace(const Subspace& s1, const Subspace& s2, double gap_tol = kGapTol);

/// basis * basis^*.
Matrix project(const Subspace& s);

/// ||basis^* basis - I||.
double orthonormality_defect(const Subspace& s);

/// Orthogonal direct sum of subspaces living in consecutive coordinate blocks.
Subspace direct_sum_subspaces(const std::vector<Subspace>& parts);

/// Restrict `s` to a contiguous coordinate block [offset, offset + len) and
/// return the orthonormal range of the projected basis.
Subspace block_component(const Subspace& s, Eigen::Index offset, Eigen::Index len,
                         const Tol& tol = {});

}  // namespace ppi
