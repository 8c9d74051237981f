#include "ppi/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ppi::kernels {

namespace {

double residual_one(const Matrix& basis, const Matrix& s) {
  const Matrix sb = s * basis;
  const Matrix out = sb - basis * (basis.adjoint() * sb);
  return op_norm(out);
}

// Column block c of the system: e_c = vec(E_{ij}) with c = i + j*d2.
void fill_column(const Matrix& t1, const Matrix& t2, Eigen::Index c, Matrix& sys) {
  const Eigen::Index d2 = t2.rows();
  const Eigen::Index d1 = t1.rows();
  const Eigen::Index i = c % d2;
  const Eigen::Index j = c / d2;
  // E_ij T1 has row i equal to row j of T1.
  for (Eigen::Index q = 0; q < d1; ++q) sys(i + q * d2, c) += t1(j, q);
  // T2 E_ij has column j equal to column i of T2.
  for (Eigen::Index p = 0; p < d2; ++p) sys(p + j * d2, c) -= t2(p, i);
}

}  // namespace

std::vector<double> invariance_residuals_serial(const Matrix& basis, const std::vector<Matrix>& ops) {
  std::vector<double> out(ops.size(), 0.0);
  if (basis.cols() == 0) return out;
  for (std::size_t i = 0; i < ops.size(); ++i) out[i] = residual_one(basis, ops[i]);
  return out;
}

std::vector<double> invariance_residuals_parallel(const Matrix& basis, const std::vector<Matrix>& ops) {
  std::vector<double> out(ops.size(), 0.0);
  if (basis.cols() == 0) return out;
  const auto n = static_cast<long>(ops.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = residual_one(basis, ops[static_cast<std::size_t>(i)]);
  return out;
}

Matrix sylvester_system_serial(const Matrix& t1, const Matrix& t2) {
  const Eigen::Index n = t1.rows() * t2.rows();
  Matrix sys = Matrix::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) fill_column(t1, t2, c, sys);
  return sys;
}

Matrix sylvester_system_parallel(const Matrix& t1, const Matrix& t2) {
  const Eigen::Index n = t1.rows() * t2.rows();
  Matrix sys = Matrix::Zero(n, n);
  // Each iteration writes only column c.
#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < n; ++c) fill_column(t1, t2, c, sys);
  return sys;
}

bool openmp_enabled() noexcept {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace ppi::kernels
