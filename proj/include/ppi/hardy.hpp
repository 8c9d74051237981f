#pragma once

// Degree-truncated vector-valued Hardy space models.
//
// Basis ordering of H^2_E truncated at degree N is degree-major and
// coefficient-minor: all of E for z^0, then all of E for z^1, and so on.
// Symbols are exact matrix-valued Laurent polynomials, so boundary identities
// become finite identities among Fourier coefficients.

#include <optional>
#include <utility>
#include <vector>

#include "ppi/numkit.hpp"

namespace ppi {

/// Phi(z) = sum_{m = m_lo}^{m_hi} coeff(m) z^m with dim_out x dim_in coefficients.
class Symbol {
 public:
  Symbol() = default;
  Symbol(Eigen::Index dim_out, Eigen::Index dim_in, int m_lo, std::vector<Matrix> coeffs);

  static Symbol constant(const Matrix& c);
  static Symbol monomial(const Matrix& c, int degree);
  static Symbol zero(Eigen::Index dim_out, Eigen::Index dim_in);
  /// Scalar symbol from coefficients starting at z^m_lo.
  static Symbol scalar(int m_lo, const std::vector<cplx>& coeffs);

  Eigen::Index dim_out() const noexcept { return dim_out_; }
  Eigen::Index dim_in() const noexcept { return dim_in_; }
  int m_lo() const noexcept { return m_lo_; }
  int m_hi() const noexcept { return m_lo_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Matrix>& coeffs() const noexcept { return coeffs_; }

  /// Coefficient of z^m; zero outside [m_lo, m_hi].
  Matrix coeff(int m) const;

  bool is_analytic() const noexcept { return m_lo_ >= 0; }
  bool is_zero(double eps = 0.0) const;

  /// Drop leading/trailing coefficients with max-abs <= eps.
  Symbol trimmed(double eps = 0.0) const;

  /// Pointwise product (this * rhs).
  Symbol operator*(const Symbol& rhs) const;
  Symbol operator+(const Symbol& rhs) const;
  Symbol scaled(cplx s) const;

  /// Phi~(z) = Phi(conj z)^*, whose coefficients are coeff(m)^*.
  Symbol tilde() const;

  /// Boundary adjoint Phi(e^{it})^*, whose coefficients are coeff(-m)^*.
  Symbol boundary_adjoint() const;

  /// Multiply by z^shift.
  Symbol shifted(int shift) const;

  /// Stack symbols with equal dim_in vertically.
  static Symbol stack(const std::vector<Symbol>& parts);
  /// Block-diagonal assembly.
  static Symbol block_diag(const std::vector<Symbol>& parts);

  /// Rows [row0, row0 + rows).
  Symbol row_block(Eigen::Index row0, Eigen::Index rows) const;

 private:
  Eigen::Index dim_out_ = 0;
  Eigen::Index dim_in_ = 0;
  int m_lo_ = 0;
  std::vector<Matrix> coeffs_;
};

/// Block (j, m) = Phi(j - m), 0 <= j <= n_out, 0 <= m <= n_in.
Matrix toeplitz(const Symbol& phi, int n_in, int n_out);

/// Block (j, m) = Phi(-j - m).
Matrix hankel(const Symbol& phi, int n_in, int n_out);

struct InnerCheck {
  bool ok = false;
  double residual = 0;         // max over lags of ||sum_m Phi(m)^* Phi(m+j) - delta_j0 I||
  std::optional<int> first_failing_lag;
};

/// Boundary values are isometric: sum_m Phi(m)^* Phi(m+j) = delta_{j0} I.
InnerCheck isometric_check(const Symbol& phi, const Tol& tol = {});

/// Analytic and isometric-valued.
bool is_inner(const Symbol& phi, const Tol& tol = {});

struct MonomialCertificate {
  int degree = 0;
  cplx coefficient{1.0, 0.0};
};

/// For a scalar inner polynomial u returns (n, c) with u = c z^n; throws
/// NotInnerError (first failing lag) otherwise.
MonomialCertificate monomial_certificate(const Symbol& u, const Tol& tol = {});

/// Order of the zero at the origin of a scalar analytic symbol (first
/// coefficient with modulus > eps); nullopt for the zero symbol.
std::optional<int> zero_order(const Symbol& u, double eps = 1e-12);

/// Truncated shift of index k on E (x) C^k in the degree-major basis.
Matrix jk_matrix(Eigen::Index coeff_dim, int k);

/// Multiplication by z on the degree-N truncation (drops the top degree).
Matrix shift_matrix(Eigen::Index coeff_dim, int degree);

struct ModelSpec {
  Eigen::Index coeff_dim = 1;
  int k = 1;
};

/// Projection of the degree-N truncation onto the span of z^0..z^{k-1}.
Matrix model_projection(const ModelSpec& spec, int degree);

/// h -> (D_{T*} T^{*m} h)_{m = 0..N}, coefficient space = the ambient space of T.
Matrix nagy_embedding(const Matrix& t, int degree, const Tol& tol = {});

}  // namespace ppi
