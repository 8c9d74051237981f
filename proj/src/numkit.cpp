#include "ppi/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ppi {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotPPI: return "NotPPI";
    case ErrorKind::ResidualExceeded: return "ResidualExceeded";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotInner: return "NotInner";
    case ErrorKind::BadDegree: return "BadDegree";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::NotReducing: return "NotReducing";
    case ErrorKind::NotProductForm: return "NotProductForm";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotIsometricSymbol: return "NotIsometricSymbol";
    case ErrorKind::NotAnalytic: return "NotAnalytic";
    case ErrorKind::MarginExceeded: return "MarginExceeded";
    case ErrorKind::ChainInadmissible: return "ChainInadmissible";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::BadTolerance: return "BadTolerance";
  }
  return "Unknown";
}

void Tol::validate() const {
  if (!(rank_rel > 0.0) || !(rank_rel < 1.0) || !(residual_abs > 0.0))
    throw Error(ErrorKind::BadTolerance,
                "need rank_rel in (0,1) and residual_abs > 0, got " + std::to_string(rank_rel) +
                    ", " + std::to_string(residual_abs));
}

Subspace::Subspace(Eigen::Index ambient_dim, Matrix basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  if (basis_.cols() == 0) basis_.resize(ambient_dim_, 0);
  if (basis_.rows() != ambient_dim_)
    throw Error(ErrorKind::DimMismatch, "basis has " + std::to_string(basis_.rows()) +
                                            " rows, ambient dimension is " +
                                            std::to_string(ambient_dim_));
  if (basis_.cols() > ambient_dim_)
    throw Error(ErrorKind::DimMismatch, "more basis vectors than ambient dimension");
  require_finite(basis_, "subspace basis");
  if (orthonormality_defect(*this) > 1e-8)
    throw Error(ErrorKind::ResidualExceeded, "subspace basis is not orthonormal");
}

Subspace Subspace::zero(Eigen::Index ambient_dim) { return Subspace(ambient_dim, Matrix(ambient_dim, 0)); }

Subspace Subspace::full(Eigen::Index ambient_dim) { return Subspace(ambient_dim, identity(ambient_dim)); }

Subspace Subspace::coordinate(Eigen::Index ambient_dim, const std::vector<Eigen::Index>& axes) {
  Matrix b = Matrix::Zero(ambient_dim, static_cast<Eigen::Index>(axes.size()));
  for (std::size_t c = 0; c < axes.size(); ++c) {
    if (axes[c] < 0 || axes[c] >= ambient_dim)
      throw Error(ErrorKind::DimMismatch, "coordinate axis out of range");
    b(axes[c], static_cast<Eigen::Index>(c)) = 1.0;
  }
  return Subspace(ambient_dim, std::move(b));
}

namespace {

// Eigen 3.4.0's BDCSVD returns wrong singular values and vectors for some
// complex matrices above its Jacobi switch-over size (projections of size 16
// already trigger it), so every decomposition here goes through JacobiSVD.
using Svd = Eigen::JacobiSVD<Matrix>;

}  // namespace

// sqrt of the top eigenvalue of the smaller Gram matrix: the eigenvalue error
// is relative to the eigenvalue itself, and this is far cheaper than an SVD.
double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const Matrix g = a.rows() <= a.cols() ? Matrix(a * a.adjoint()) : Matrix(a.adjoint() * a);
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) throw Error(ErrorKind::NonFinite, std::string(what) + " contains NaN or Inf");
}

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols())
    throw Error(ErrorKind::NotSquare, std::string(what) + " is " + std::to_string(a.rows()) + "x" +
                                          std::to_string(a.cols()));
}

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

Matrix matrix_power(const Matrix& a, int n) {
  require_square(a, "matrix_power operand");
  Matrix out = identity(a.rows());
  for (int i = 0; i < n; ++i) out = a * out;
  return out;
}

Matrix direct_sum(const std::vector<Matrix>& blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out = Matrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

namespace {

double cutoff_for(const Eigen::VectorXd& sv, const Tol& tol, Cutoff cut) {
  double ref = sv.size() > 0 ? sv(0) : 0.0;
  if (cut == Cutoff::unit) ref = std::max(ref, 1.0);
  return tol.rank_rel * ref;
}

Eigen::Index count_above(const Eigen::VectorXd& sv, double cutoff) {
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return r;
}

}  // namespace

Eigen::Index numerical_rank(const Matrix& a, const Tol& tol, Cutoff cut) {
  require_finite(a, "matrix");
  if (a.size() == 0) return 0;
  Svd svd(a);
  const auto& sv = svd.singularValues();
  return count_above(sv, cutoff_for(sv, tol, cut));
}

Subspace orthonormal_range(const Matrix& a, const Tol& tol, Cutoff cut) {
  require_finite(a, "matrix");
  if (a.size() == 0) return Subspace::zero(a.rows());
  const Svd svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const Eigen::Index r = count_above(sv, cutoff_for(sv, tol, cut));
  return Subspace(a.rows(), svd.matrixU().leftCols(r));
}

Subspace kernel(const Matrix& a, const Tol& tol, Cutoff cut) {
  require_finite(a, "matrix");
  const Eigen::Index n = a.cols();
  if (a.rows() == 0 || n == 0) return Subspace::full(n);
  const Svd svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Eigen::Index r = count_above(sv, cutoff_for(sv, tol, cut));
  return Subspace(n, svd.matrixV().rightCols(n - r));
}

namespace {

void require_same_ambient(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw Error(ErrorKind::DimMismatch, "subspaces live in C^" + std::to_string(s1.ambient_dim()) +
                                            " and C^" + std::to_string(s2.ambient_dim()));
}

}  // namespace

Subspace intersect(const Subspace& s1, const Subspace& s2, const Tol& tol) {
  require_same_ambient(s1, s2);
  const Eigen::Index d = s1.ambient_dim();
  if (s1.is_zero() || s2.is_zero()) return Subspace::zero(d);
  Matrix stacked(2 * d, d);
  stacked.topRows(d) = identity(d) - project(s1);
  stacked.bottomRows(d) = identity(d) - project(s2);
  return kernel(stacked, tol, Cutoff::unit);
}

Subspace span(const Subspace& s1, const Subspace& s2, const Tol& tol) {
  require_same_ambient(s1, s2);
  Matrix joined(s1.ambient_dim(), s1.rank() + s2.rank());
  joined << s1.basis(), s2.basis();
  return orthonormal_range(joined, tol, Cutoff::unit);
}

Subspace complement(const Subspace& s, const Tol& tol) {
  if (s.is_zero()) return Subspace::full(s.ambient_dim());
  return kernel(adj(s.basis()), tol, Cutoff::unit);
}

Subspace image(const Matrix& a, const Subspace& s, const Tol& tol, Cutoff cut) {
  if (a.cols() != s.ambient_dim())
    throw Error(ErrorKind::DimMismatch, "operator domain does not match subspace ambient dimension");
  if (s.is_zero()) return Subspace::zero(a.rows());
  return orthonormal_range(a * s.basis(), tol, cut);
}

Matrix project(const Subspace& s) { return s.basis() * adj(s.basis()); }

double subspace_gap(const Subspace& s1, const Subspace& s2) {
  require_same_ambient(s1, s2);
  if (s1.ambient_dim() == 0) return 0.0;
  // P1 - P2 is Hermitian; its spectral norm is the largest |eigenvalue|.
  Eigen::SelfAdjointEigenSolver<Matrix> es(project(s1) - project(s2), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool same_subspace(const Subspace& s1, const Subspace& s2, double gap_tol) {
  if (s1.ambient_dim() != s2.ambient_dim() || s1.rank() != s2.rank()) return false;
  return subspace_gap(s1, s2) <= gap_tol;
}

double orthonormality_defect(const Subspace& s) {
  if (s.rank() == 0) return 0.0;
  return op_norm(adj(s.basis()) * s.basis() - identity(s.rank()));
}

Subspace direct_sum_subspaces(const std::vector<Subspace>& parts) {
  std::vector<Matrix> blocks;
  blocks.reserve(parts.size());
  Eigen::Index d = 0;
  for (const auto& p : parts) {
    blocks.push_back(p.basis());
    d += p.ambient_dim();
  }
  return Subspace(d, direct_sum(blocks));
}

Subspace block_component(const Subspace& s, Eigen::Index offset, Eigen::Index len, const Tol& tol) {
  if (offset < 0 || len < 0 || offset + len > s.ambient_dim())
    throw Error(ErrorKind::DimMismatch, "coordinate block out of range");
  if (s.is_zero()) return Subspace::zero(len);
  return orthonormal_range(s.basis().middleRows(offset, len), tol, Cutoff::unit);
}

}  // namespace ppi
