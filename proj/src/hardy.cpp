#include "ppi/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ppi {

Symbol::Symbol(Eigen::Index dim_out, Eigen::Index dim_in, int m_lo, std::vector<Matrix> coeffs)
    : dim_out_(dim_out), dim_in_(dim_in), m_lo_(m_lo), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Matrix::Zero(dim_out_, dim_in_));
  for (const auto& c : coeffs_) {
    if (c.rows() != dim_out_ || c.cols() != dim_in_)
      throw Error(ErrorKind::ShapeMismatch, "symbol coefficient has shape " + std::to_string(c.rows()) +
                                                "x" + std::to_string(c.cols()) + ", expected " +
                                                std::to_string(dim_out_) + "x" + std::to_string(dim_in_));
    require_finite(c, "symbol coefficient");
  }
}

Symbol Symbol::constant(const Matrix& c) { return Symbol(c.rows(), c.cols(), 0, {c}); }

Symbol Symbol::monomial(const Matrix& c, int degree) { return Symbol(c.rows(), c.cols(), degree, {c}); }

Symbol Symbol::zero(Eigen::Index dim_out, Eigen::Index dim_in) { return Symbol(dim_out, dim_in, 0, {}); }

Symbol Symbol::scalar(int m_lo, const std::vector<cplx>& coeffs) {
  std::vector<Matrix> cs;
  cs.reserve(coeffs.size());
  for (cplx c : coeffs) cs.push_back(Matrix::Constant(1, 1, c));
  return Symbol(1, 1, m_lo, std::move(cs));
}

Matrix Symbol::coeff(int m) const {
  if (m < m_lo() || m > m_hi()) return Matrix::Zero(dim_out_, dim_in_);
  return coeffs_[static_cast<std::size_t>(m - m_lo_)];
}

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

bool Symbol::is_zero(double eps) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const Matrix& c) { return max_abs(c) <= eps; });
}

Symbol Symbol::trimmed(double eps) const {
  std::size_t lo = 0, hi = coeffs_.size();
  while (lo < hi && max_abs(coeffs_[lo]) <= eps) ++lo;
  while (hi > lo && max_abs(coeffs_[hi - 1]) <= eps) --hi;
  if (lo == hi) return zero(dim_out_, dim_in_);
  return Symbol(dim_out_, dim_in_, m_lo_ + static_cast<int>(lo),
                std::vector<Matrix>(coeffs_.begin() + static_cast<std::ptrdiff_t>(lo),
                                    coeffs_.begin() + static_cast<std::ptrdiff_t>(hi)));
}

Symbol Symbol::operator*(const Symbol& rhs) const {
  if (dim_in_ != rhs.dim_out_) throw Error(ErrorKind::ShapeMismatch, "symbol product shapes do not compose");
  const int lo = m_lo() + rhs.m_lo();
  const int hi = m_hi() + rhs.m_hi();
  std::vector<Matrix> out(static_cast<std::size_t>(hi - lo + 1), Matrix::Zero(dim_out_, rhs.dim_in_));
  for (int a = m_lo(); a <= m_hi(); ++a)
    for (int b = rhs.m_lo(); b <= rhs.m_hi(); ++b)
      out[static_cast<std::size_t>(a + b - lo)] += coeff(a) * rhs.coeff(b);
  return Symbol(dim_out_, rhs.dim_in_, lo, std::move(out));
}

Symbol Symbol::operator+(const Symbol& rhs) const {
  if (dim_out_ != rhs.dim_out_ || dim_in_ != rhs.dim_in_)
    throw Error(ErrorKind::ShapeMismatch, "symbol sum shapes differ");
  const int lo = std::min(m_lo(), rhs.m_lo());
  const int hi = std::max(m_hi(), rhs.m_hi());
  std::vector<Matrix> out;
  for (int m = lo; m <= hi; ++m) out.push_back(coeff(m) + rhs.coeff(m));
  return Symbol(dim_out_, dim_in_, lo, std::move(out));
}

Symbol Symbol::scaled(cplx s) const {
  std::vector<Matrix> out;
  for (const auto& c : coeffs_) out.push_back(s * c);
  return Symbol(dim_out_, dim_in_, m_lo_, std::move(out));
}

Symbol Symbol::tilde() const {
  std::vector<Matrix> out;
  for (const auto& c : coeffs_) out.push_back(adj(c));
  return Symbol(dim_in_, dim_out_, m_lo_, std::move(out));
}

Symbol Symbol::boundary_adjoint() const {
  std::vector<Matrix> out;
  for (int m = -m_hi(); m <= -m_lo(); ++m) out.push_back(adj(coeff(-m)));
  return Symbol(dim_in_, dim_out_, -m_hi(), std::move(out));
}

Symbol Symbol::shifted(int shift) const { return Symbol(dim_out_, dim_in_, m_lo_ + shift, coeffs_); }

Symbol Symbol::stack(const std::vector<Symbol>& parts) {
  if (parts.empty()) throw Error(ErrorKind::ShapeMismatch, "empty stack");
  const Eigen::Index din = parts.front().dim_in();
  Eigen::Index dout = 0;
  int lo = parts.front().m_lo(), hi = parts.front().m_hi();
  for (const auto& p : parts) {
    if (p.dim_in() != din) throw Error(ErrorKind::ShapeMismatch, "stacked symbols need equal dim_in");
    dout += p.dim_out();
    lo = std::min(lo, p.m_lo());
    hi = std::max(hi, p.m_hi());
  }
  std::vector<Matrix> out;
  for (int m = lo; m <= hi; ++m) {
    Matrix c(dout, din);
    Eigen::Index r = 0;
    for (const auto& p : parts) {
      c.middleRows(r, p.dim_out()) = p.coeff(m);
      r += p.dim_out();
    }
    out.push_back(std::move(c));
  }
  return Symbol(dout, din, lo, std::move(out));
}

Symbol Symbol::block_diag(const std::vector<Symbol>& parts) {
  if (parts.empty()) throw Error(ErrorKind::ShapeMismatch, "empty block diagonal");
  int lo = parts.front().m_lo(), hi = parts.front().m_hi();
  for (const auto& p : parts) {
    lo = std::min(lo, p.m_lo());
    hi = std::max(hi, p.m_hi());
  }
  std::vector<Matrix> out;
  for (int m = lo; m <= hi; ++m) {
    std::vector<Matrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.coeff(m));
    out.push_back(direct_sum(blocks));
  }
  Eigen::Index dout = 0, din = 0;
  for (const auto& p : parts) {
    dout += p.dim_out();
    din += p.dim_in();
  }
  return Symbol(dout, din, lo, std::move(out));
}

Symbol Symbol::row_block(Eigen::Index row0, Eigen::Index rows) const {
  if (row0 < 0 || rows < 0 || row0 + rows > dim_out_) throw Error(ErrorKind::ShapeMismatch, "row block out of range");
  std::vector<Matrix> out;
  for (const auto& c : coeffs_) out.push_back(c.middleRows(row0, rows));
  return Symbol(rows, dim_in_, m_lo_, std::move(out));
}

Matrix toeplitz(const Symbol& phi, int n_in, int n_out) {
  if (n_in < 0 || n_out < 0) throw Error(ErrorKind::BadDegree, "negative truncation degree");
  const Eigen::Index p = phi.dim_out(), q = phi.dim_in();
  Matrix t = Matrix::Zero(p * (n_out + 1), q * (n_in + 1));
  for (int j = 0; j <= n_out; ++j)
    for (int m = 0; m <= n_in; ++m) {
      const int idx = j - m;
      if (idx < phi.m_lo() || idx > phi.m_hi()) continue;
      t.block(j * p, m * q, p, q) = phi.coeff(idx);
    }
  return t;
}

Matrix hankel(const Symbol& phi, int n_in, int n_out) {
  if (n_in < 0 || n_out < 0) throw Error(ErrorKind::BadDegree, "negative truncation degree");
  const Eigen::Index p = phi.dim_out(), q = phi.dim_in();
  Matrix h = Matrix::Zero(p * (n_out + 1), q * (n_in + 1));
  for (int j = 0; j <= n_out; ++j)
    for (int m = 0; m <= n_in; ++m) {
      const int idx = -j - m;
      if (idx < phi.m_lo() || idx > phi.m_hi()) continue;
      h.block(j * p, m * q, p, q) = phi.coeff(idx);
    }
  return h;
}

InnerCheck isometric_check(const Symbol& phi, const Tol& tol) {
  InnerCheck out;
  const int span = phi.m_hi() - phi.m_lo();
  const Matrix eye = identity(phi.dim_in());
  for (int lag = 0; lag <= span; ++lag) {
    Matrix g = Matrix::Zero(phi.dim_in(), phi.dim_in());
    for (int m = phi.m_lo(); m + lag <= phi.m_hi(); ++m) g += adj(phi.coeff(m)) * phi.coeff(m + lag);
    if (lag == 0) g -= eye;
    const double r = op_norm(g);
    out.residual = std::max(out.residual, r);
    if (r > tol.residual_abs && !out.first_failing_lag) out.first_failing_lag = lag;
  }
  out.ok = !out.first_failing_lag.has_value();
  return out;
}

bool is_inner(const Symbol& phi, const Tol& tol) { return phi.is_analytic() && isometric_check(phi, tol).ok; }

MonomialCertificate monomial_certificate(const Symbol& u, const Tol& tol) {
  if (u.dim_out() != 1 || u.dim_in() != 1) throw Error(ErrorKind::ShapeMismatch, "monomial test needs a scalar symbol");
  if (!u.is_analytic()) throw Error(ErrorKind::NotAnalytic, "monomial test needs an analytic polynomial");
  const InnerCheck chk = isometric_check(u, tol);
  if (!chk.ok) {
    const int lag = *chk.first_failing_lag;
    Matrix g = Matrix::Zero(1, 1);
    for (int m = u.m_lo(); m + lag <= u.m_hi(); ++m) g += adj(u.coeff(m)) * u.coeff(m + lag);
    if (lag == 0) g(0, 0) -= 1.0;
    throw NotInnerError(lag, std::abs(g(0, 0)));
  }
  MonomialCertificate cert;
  double best = -1.0;
  for (int m = u.m_lo(); m <= u.m_hi(); ++m) {
    const double a = std::abs(u.coeff(m)(0, 0));
    if (a > best) {
      best = a;
      cert.degree = m;
      cert.coefficient = u.coeff(m)(0, 0);
    }
  }
  return cert;
}

std::optional<int> zero_order(const Symbol& u, double eps) {
  if (u.dim_out() != 1 || u.dim_in() != 1) throw Error(ErrorKind::ShapeMismatch, "zero order needs a scalar symbol");
  if (!u.is_analytic()) throw Error(ErrorKind::NotAnalytic, "zero order needs an analytic symbol");
  for (int m = u.m_lo(); m <= u.m_hi(); ++m)
    if (std::abs(u.coeff(m)(0, 0)) > eps) return m;
  return std::nullopt;
}

Matrix shift_matrix(Eigen::Index coeff_dim, int degree) {
  return toeplitz(Symbol::monomial(identity(coeff_dim), 1), degree, degree);
}

Matrix jk_matrix(Eigen::Index coeff_dim, int k) {
  if (k < 1) throw Error(ErrorKind::BadSpec, "truncated shift index must be >= 1");
  return shift_matrix(coeff_dim, k - 1);
}

Matrix model_projection(const ModelSpec& spec, int degree) {
  if (spec.k < 1) throw Error(ErrorKind::BadSpec, "model index must be >= 1");
  if (degree < spec.k - 1)
    throw Error(ErrorKind::BadDegree, "degree " + std::to_string(degree) + " cannot hold z^0..z^" +
                                          std::to_string(spec.k - 1));
  const Eigen::Index e = spec.coeff_dim;
  Matrix p = Matrix::Zero(e * (degree + 1), e * (degree + 1));
  p.topLeftCorner(e * spec.k, e * spec.k).setIdentity();
  return p;
}

Matrix nagy_embedding(const Matrix& t, int degree, const Tol& tol) {
  require_square(t, "T");
  if (degree < 0) throw Error(ErrorKind::BadDegree, "negative truncation degree");
  const double nrm = op_norm(t);
  if (nrm > 1.0 + tol.residual_abs)
    throw Error(ErrorKind::NotContraction, "||T|| = " + std::to_string(nrm));
  const Eigen::Index d = t.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(identity(d) - t * adj(t));
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix defect = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * adj(es.eigenvectors());
  Matrix pi(d * (degree + 1), d);
  Matrix pw = identity(d);
  const Matrix ts = adj(t);
  for (int m = 0; m <= degree; ++m) {
    pi.middleRows(d * m, d) = defect * pw;
    pw = ts * pw;
  }
  return pi;
}

}  // namespace ppi
