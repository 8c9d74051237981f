#include "ppi/pisom.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace ppi {

bool PartialIsometryReport::agree() const noexcept {
  return std::all_of(verdicts.begin(), verdicts.end(), [&](bool v) { return v == verdicts[0]; });
}

double PartialIsometryReport::worst() const noexcept {
  return *std::max_element(residuals.begin(), residuals.end());
}

PartialIsometryReport is_partial_isometry(const Matrix& t, const Tol& tol) {
  tol.validate();
  require_square(t, "T");
  require_finite(t, "T");
  const Eigen::Index d = t.rows();
  const Matrix ts = adj(t);
  PartialIsometryReport rep;

  if (d > 0) {
    Eigen::JacobiSVD<Matrix> svd(t);
    const auto& sv = svd.singularValues();
    const double cut = tol.rank_rel * std::max(sv(0), 1.0);
    double r0 = 0.0;
    for (Eigen::Index i = 0; i < sv.size() && sv(i) > cut; ++i) r0 = std::max(r0, std::abs(sv(i) - 1.0));
    rep.residuals[0] = r0;

    const Subspace range_t = orthonormal_range(t, tol, Cutoff::unit);
    const Subspace range_ts = orthonormal_range(ts, tol, Cutoff::unit);

    if (!range_t.is_zero()) {
      const Matrix w = ts * range_t.basis();
      rep.residuals[1] = op_norm(adj(w) * w - identity(range_t.rank()));
    }
    rep.residuals[2] = op_norm(ts * t * ts - ts);
    rep.residuals[3] = op_norm(t * ts * t - t);
    rep.residuals[4] = op_norm(t * ts - project(range_t));
    rep.residuals[5] = op_norm(ts * t - project(range_ts));
  }

  for (std::size_t i = 0; i < PartialIsometryReport::kCriteria; ++i)
    rep.verdicts[i] = rep.residuals[i] <= tol.residual_abs;
  rep.is_pi = std::all_of(rep.verdicts.begin(), rep.verdicts.end(), [](bool v) { return v; });
  return rep;
}

namespace {

// The T T^* T = T characterization alone; the power loops only need a verdict.
bool quick_pi(const Matrix& p, const Tol& tol) { return op_norm(p * adj(p) * p - p) <= tol.residual_abs; }

}  // namespace

PowerReport is_power_partial_isometry(const Matrix& t, const Tol& tol) {
  require_square(t, "T");
  const int d = static_cast<int>(t.rows());
  PowerReport rep;
  Matrix p = t;
  for (int n = 1; n <= d + 1; ++n) {
    if (!quick_pi(p, tol)) {
      rep.first_failing_power = n;
      return rep;
    }
    p = t * p;
  }
  rep.is_ppi = true;
  return rep;
}

namespace {

void require_ppi(const Matrix& t, const Tol& tol) {
  const auto rep = is_power_partial_isometry(t, tol);
  if (!rep.is_ppi)
    throw Error(ErrorKind::NotPPI,
                "T^" + std::to_string(*rep.first_failing_power) + " is not a partial isometry");
}

}  // namespace

DefectProjections defect_projections(const Matrix& t, int n, const Tol& tol) {
  require_square(t, "T");
  if (n < 0) throw Error(ErrorKind::BadSpec, "negative power");
  Matrix p = identity(t.rows());
  for (int j = 1; j <= n; ++j) {
    p = t * p;
    if (!quick_pi(p, tol))
      throw Error(ErrorKind::NotPPI, "T^" + std::to_string(j) + " is not a partial isometry");
  }
  return {adj(p) * p, p * adj(p)};
}

double ProjectionCalculusReport::worst() const noexcept {
  return std::max({commute_initial_final_each, commute_initial_final, products_are_projections,
                   shift_initial, shift_final});
}

ProjectionCalculusReport projection_calculus_check(const Matrix& t, int max_k, const Tol& tol) {
  require_square(t, "T");
  if (max_k < 0) throw Error(ErrorKind::BadSpec, "negative max_k");
  std::vector<Matrix> e, f;
  Matrix p = identity(t.rows());
  for (int j = 0; j <= max_k + 1; ++j) {
    if (j > 0) {
      p = t * p;
      if (!quick_pi(p, tol))
        throw Error(ErrorKind::NotPPI, "T^" + std::to_string(j) + " is not a partial isometry");
    }
    e.push_back(adj(p) * p);
    f.push_back(p * adj(p));
  }

  ProjectionCalculusReport rep;
  auto upd = [](double& slot, double v) { slot = std::max(slot, v); };
  auto proj_defect = [](const Matrix& x) { return std::max(op_norm(x * x - x), op_norm(x - adj(x))); };
  for (int k = 0; k <= max_k; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    for (int l = 0; l <= max_k; ++l) {
      const auto lu = static_cast<std::size_t>(l);
      upd(rep.commute_initial_final_each, op_norm(e[ku] * e[lu] - e[lu] * e[ku]));
      upd(rep.commute_initial_final_each, op_norm(f[ku] * f[lu] - f[lu] * f[ku]));
      upd(rep.commute_initial_final, op_norm(e[ku] * f[lu] - f[lu] * e[ku]));
      upd(rep.products_are_projections, proj_defect(e[ku] * f[lu]));
      upd(rep.products_are_projections, proj_defect(e[ku] * e[lu]));
    }
    upd(rep.shift_initial, op_norm(t * e[ku + 1] - e[ku] * t));
    upd(rep.shift_final, op_norm(t * f[ku] - f[ku + 1] * t));
  }
  return rep;
}

namespace detail {

Subspace slot_subspace_unchecked(const Matrix& t, int k, int n, const Tol& tol) {
  const Matrix ts = adj(t);
  const Subspace ker_ts = kernel(ts, tol, Cutoff::unit);
  const Subspace ker_t = kernel(t, tol, Cutoff::unit);
  const Subspace forward = image(matrix_power(t, n - 1), ker_ts, tol, Cutoff::unit);
  const Subspace backward = image(matrix_power(ts, k - n), ker_t, tol, Cutoff::unit);
  return intersect(forward, backward, tol);
}

}  // namespace detail

Subspace slot_subspace(const Matrix& t, int k, int n, const Tol& tol) {
  if (k < 1 || n < 1 || n > k) throw Error(ErrorKind::BadSpec, "slot indices need 1 <= n <= k");
  require_ppi(t, tol);
  return detail::slot_subspace_unchecked(t, k, n, tol);
}

double burdak_identity_check(const Matrix& t, int p, const Tol& tol) {
  if (p < 1) throw Error(ErrorKind::BadSpec, "need p >= 1");
  require_ppi(t, tol);
  const Matrix prev = matrix_power(t, p - 1);
  const Matrix cur = t * prev;
  const Matrix diff = prev * adj(prev) - cur * adj(cur);
  const Subspace lhs = orthonormal_range(diff, tol, Cutoff::unit);
  const Subspace rhs = image(prev, kernel(adj(t), tol, Cutoff::unit), tol, Cutoff::unit);
  if (lhs.rank() != rhs.rank()) return 1.0;
  return subspace_gap(lhs, rhs);
}

Decomposition hw_decompose(const Matrix& t, const Tol& tol) {
  require_square(t, "T");
  require_ppi(t, tol);
  const Eigen::Index d = t.rows();
  const int di = static_cast<int>(d);
  const Matrix ts = adj(t);

  // Ranges of powers are nested, so the infinite intersections are reached at d.
  const Subspace fwd = orthonormal_range(matrix_power(t, di), tol, Cutoff::unit);
  const Subspace bwd = orthonormal_range(matrix_power(ts, di), tol, Cutoff::unit);
  const Subspace hu = intersect(fwd, bwd, tol);

  Decomposition dec;
  dec.unitary_dim = hu.rank();
  std::vector<Matrix> columns{hu.basis()};
  std::vector<Matrix> blocks{adj(hu.basis()) * t * hu.basis()};
  Eigen::Index used = hu.rank();

  for (int k = 1; k <= di && used < d; ++k) {
    const Subspace head = detail::slot_subspace_unchecked(t, k, 1, tol);
    if (head.is_zero()) continue;
    dec.multiplicities[k] = head.rank();
    for (Eigen::Index i = 0; i < head.rank(); ++i) {
      Matrix chain(d, k);
      Vector v = head.basis().col(i);
      for (int n = 0; n < k; ++n) {
        chain.col(n) = v;
        v = t * v;
      }
      columns.push_back(std::move(chain));
      Matrix jb = Matrix::Zero(k, k);
      for (int n = 1; n < k; ++n) jb(n, n - 1) = 1.0;
      blocks.push_back(std::move(jb));
    }
    used += k * head.rank();
  }

  if (used != d)
    throw Error(ErrorKind::ResidualExceeded, "recovered pieces span dimension " + std::to_string(used) +
                                                 " of " + std::to_string(d));
  Matrix q(d, d);
  Eigen::Index c = 0;
  for (const auto& col : columns) {
    q.middleCols(c, col.cols()) = col;
    c += col.cols();
  }
  dec.unitarity_defect = d > 0 ? op_norm(adj(q) * q - identity(d)) : 0.0;
  if (dec.unitarity_defect > tol.residual_abs)
    throw Error(ErrorKind::ResidualExceeded,
                "adapted basis is not orthonormal (defect " + std::to_string(dec.unitarity_defect) + ")");
  dec.canonical = direct_sum(blocks);
  dec.conjugator = std::move(q);
  dec.residual = d > 0 ? op_norm(adj(dec.conjugator) * t * dec.conjugator - dec.canonical) : 0.0;
  return dec;
}

}  // namespace ppi
