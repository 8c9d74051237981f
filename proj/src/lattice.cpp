#include "ppi/lattice.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "ppi/hardy.hpp"
#include "ppi/kernels.hpp"

namespace ppi {

namespace {

std::vector<Matrix> unvec_columns(const Subspace& ker, Eigen::Index rows, Eigen::Index cols) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(ker.rank()));
  for (Eigen::Index c = 0; c < ker.rank(); ++c) {
    Matrix s(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) s.col(j) = ker.basis().col(c).segment(j * rows, rows);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<Matrix> intertwiner_basis(const Matrix& t1, const Matrix& t2, const Tol& tol) {
  require_square(t1, "T1");
  require_square(t2, "T2");
  require_finite(t1, "T1");
  require_finite(t2, "T2");
  if (t1.rows() == 0 || t2.rows() == 0) return {};
  const Matrix sys = kernels::sylvester_system_parallel(t1, t2);
  return unvec_columns(kernel(sys, tol, Cutoff::unit), t2.rows(), t1.rows());
}

std::vector<Matrix> commutant_basis(const Matrix& t, const Tol& tol) { return intertwiner_basis(t, t, tol); }

std::vector<Matrix> joint_commutant_basis(const std::vector<Matrix>& ts, const Tol& tol) {
  if (ts.empty()) throw Error(ErrorKind::BadSpec, "empty operator family");
  const Eigen::Index d = ts.front().rows();
  for (const auto& t : ts) {
    require_square(t, "T");
    if (t.rows() != d) throw Error(ErrorKind::DimMismatch, "operator family has mixed dimensions");
  }
  if (d == 0) return {};
  Matrix sys(d * d * static_cast<Eigen::Index>(ts.size()), d * d);
  for (std::size_t i = 0; i < ts.size(); ++i)
    sys.middleRows(static_cast<Eigen::Index>(i) * d * d, d * d) = kernels::sylvester_system_parallel(ts[i], ts[i]);
  return unvec_columns(kernel(sys, tol, Cutoff::unit), d, d);
}

InvarianceResult is_invariant(const Subspace& m, const Matrix& t, const Tol& tol) {
  require_square(t, "T");
  if (t.rows() != m.ambient_dim())
    throw Error(ErrorKind::DimMismatch, "subspace lives in C^" + std::to_string(m.ambient_dim()) +
                                            ", operator acts on C^" + std::to_string(t.rows()));
  InvarianceResult r;
  r.residual = kernels::invariance_residuals_serial(m.basis(), {t}).front();
  r.flag = r.residual <= tol.residual_abs;
  return r;
}

bool is_reducing(const Subspace& m, const Matrix& t, const Tol& tol) {
  return is_invariant(m, t, tol).flag && is_invariant(m, adj(t), tol).flag;
}

HyperResult hyperinvariance_sweep(const Subspace& m, const std::vector<Matrix>& basis, const Tol& tol) {
  HyperResult r;
  const auto res = kernels::invariance_residuals_parallel(m.basis(), basis);
  if (!res.empty()) {
    const auto it = std::max_element(res.begin(), res.end());
    r.worst_residual = *it;
    r.witness = basis[static_cast<std::size_t>(it - res.begin())];
  }
  r.flag = r.worst_residual <= tol.residual_abs;
  return r;
}

HyperResult is_hyperinvariant(const Subspace& m, const Matrix& t, const Tol& tol) {
  require_square(t, "T");
  if (t.rows() != m.ambient_dim()) throw Error(ErrorKind::DimMismatch, "subspace and operator dimensions differ");
  return hyperinvariance_sweep(m, commutant_basis(t, tol), tol);
}

Subspace cyclic_closure(const Vector& x, const std::vector<Matrix>& basis, const Tol& tol) {
  const Eigen::Index d = x.size();
  const double nx = x.norm();
  if (nx == 0.0) return Subspace::zero(d);
  Subspace cur = orthonormal_range(x / nx, tol, Cutoff::unit);
  for (Eigen::Index it = 0; it <= d; ++it) {
    Matrix gen(d, cur.rank() * static_cast<Eigen::Index>(basis.size() + 1));
    gen.leftCols(cur.rank()) = cur.basis();
    for (std::size_t i = 0; i < basis.size(); ++i)
      gen.middleCols(cur.rank() * static_cast<Eigen::Index>(i + 1), cur.rank()) = basis[i] * cur.basis();
    Subspace next = orthonormal_range(gen, tol, Cutoff::unit);
    if (next.rank() == cur.rank()) return cur;
    cur = std::move(next);
  }
  return cur;
}

Subspace cyclic_hyperinvariant(const Vector& x, const Matrix& t, const Tol& tol) {
  require_square(t, "T");
  if (t.rows() != x.size()) throw Error(ErrorKind::DimMismatch, "vector and operator dimensions differ");
  return cyclic_closure(x, commutant_basis(t, tol), tol);
}

Subspace tensor_with_ck(const Subspace& s, int k) {
  const Eigen::Index e = s.ambient_dim();
  const Eigen::Index r = s.rank();
  Matrix b = Matrix::Zero(e * k, r * k);
  for (int deg = 0; deg < k; ++deg) b.block(deg * e, deg * r, e, r) = s.basis();
  return Subspace(e * k, std::move(b));
}

Subspace reducing_factor_jk(const Subspace& m, Eigen::Index coeff_dim, int k, const Tol& tol) {
  const Matrix j = jk_matrix(coeff_dim, k);
  if (m.ambient_dim() != j.rows()) throw Error(ErrorKind::DimMismatch, "subspace does not live on E (x) C^k");
  if (!is_reducing(m, j, tol)) throw Error(ErrorKind::NotReducing, "subspace does not reduce J_k");
  const Subspace s = orthonormal_range(m.basis().topRows(coeff_dim), tol, Cutoff::unit);
  const Subspace rebuilt = tensor_with_ck(s, k);
  const double gap = rebuilt.rank() == m.rank() ? subspace_gap(rebuilt, m) : 1.0;
  if (gap > kGapTol) throw Error(ErrorKind::NotProductForm, "gap to S (x) C^k is " + std::to_string(gap));
  return s;
}

std::vector<std::pair<int, Eigen::Index>> normalize_parts(std::vector<std::pair<int, Eigen::Index>> parts) {
  std::map<int, Eigen::Index> merged;
  for (const auto& [k, m] : parts) {
    if (k < 1) throw Error(ErrorKind::BadSpec, "part index must be >= 1, got " + std::to_string(k));
    if (m < 0) throw Error(ErrorKind::BadSpec, "negative multiplicity for k = " + std::to_string(k));
    merged[k] += m;
  }
  std::vector<std::pair<int, Eigen::Index>> out;
  for (const auto& [k, m] : merged)
    if (m > 0) out.emplace_back(k, m);
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> admissibility_violation(const Chain& chain) {
  if (chain.values.size() != chain.parts.size())
    throw Error(ErrorKind::BadSpec, "chain has " + std::to_string(chain.values.size()) + " values for " +
                                        std::to_string(chain.parts.size()) + " parts");
  for (std::size_t a = 0; a < chain.parts.size(); ++a)
    if (chain.values[a] < 0 || chain.values[a] > chain.parts[a].first) return std::make_pair(a, a);
  for (std::size_t b = 0; b < chain.parts.size(); ++b)
    for (std::size_t a = 0; a < b; ++a) {
      const int ki = chain.parts[a].first, kj = chain.parts[b].first;
      const int ni = chain.values[a], nj = chain.values[b];
      if (ni > nj || nj - ni > kj - ki) return std::make_pair(a, b);
    }
  return std::nullopt;
}

bool is_admissible(const Chain& chain) { return !admissibility_violation(chain).has_value(); }

namespace {

void enumerate_rec(const std::vector<std::pair<int, Eigen::Index>>& parts, bool admissible_only,
                   std::vector<int>& vals, std::vector<Chain>& out) {
  const std::size_t pos = vals.size();
  if (pos == parts.size()) {
    out.push_back(Chain{parts, vals});
    return;
  }
  const int k = parts[pos].first;
  for (int n = 0; n <= k; ++n) {
    bool ok = true;
    if (admissible_only)
      for (std::size_t a = 0; a < pos && ok; ++a)
        ok = vals[a] <= n && n - vals[a] <= k - parts[a].first;
    if (!ok) continue;
    vals.push_back(n);
    enumerate_rec(parts, admissible_only, vals, out);
    vals.pop_back();
  }
}

}  // namespace

std::vector<Chain> enumerate_admissible_chains(const std::vector<std::pair<int, Eigen::Index>>& parts) {
  const auto p = normalize_parts(parts);
  std::vector<Chain> out;
  std::vector<int> vals;
  enumerate_rec(p, true, vals, out);
  return out;
}

std::vector<Chain> enumerate_all_chains(const std::vector<std::pair<int, Eigen::Index>>& parts) {
  const auto p = normalize_parts(parts);
  std::vector<Chain> out;
  std::vector<int> vals;
  enumerate_rec(p, false, vals, out);
  return out;
}

Matrix chain_operator(const std::vector<std::pair<int, Eigen::Index>>& parts) {
  std::vector<Matrix> blocks;
  for (const auto& [k, m] : parts) blocks.push_back(jk_matrix(m, k));
  return direct_sum(blocks);
}

Eigen::Index chain_ambient_dim(const std::vector<std::pair<int, Eigen::Index>>& parts) {
  Eigen::Index d = 0;
  for (const auto& [k, m] : parts) d += k * m;
  return d;
}

Subspace chain_subspace(const Chain& chain) {
  if (chain.values.size() != chain.parts.size()) throw Error(ErrorKind::BadSpec, "chain values and parts differ in length");
  std::vector<Eigen::Index> axes;
  Eigen::Index off = 0;
  for (std::size_t a = 0; a < chain.parts.size(); ++a) {
    const auto [k, m] = chain.parts[a];
    const int n = chain.values[a];
    if (n < 0 || n > k) throw Error(ErrorKind::BadSpec, "n_k out of range for k = " + std::to_string(k));
    for (int deg = k - n; deg < k; ++deg)
      for (Eigen::Index c = 0; c < m; ++c) axes.push_back(off + deg * m + c);
    off += k * m;
  }
  return Subspace::coordinate(off, axes);
}

Matrix model_intertwiner(int i, int j, const std::vector<cplx>& theta) {
  if (i < 1 || j < 1) throw Error(ErrorKind::BadSpec, "model indices must be >= 1");
  const int pad = std::max(i - j, 0);
  const int free = std::min(i, j);
  Matrix s = Matrix::Zero(i, j);
  for (int p = 0; p < i; ++p)
    for (int q = 0; q < j; ++q) {
      const int idx = p - q - pad + 1;
      if (idx >= 1 && idx <= free && static_cast<std::size_t>(idx) <= theta.size())
        s(p, q) = theta[static_cast<std::size_t>(idx - 1)];
    }
  return s;
}

Matrix chain_witness(const Chain& chain) {
  const auto bad = admissibility_violation(chain);
  if (!bad) throw Error(ErrorKind::BadSpec, "chain is admissible; no witness exists");
  const auto [a, b] = *bad;
  if (a == b) throw Error(ErrorKind::ChainInadmissible, "n_k out of range");
  std::vector<Eigen::Index> offsets;
  Eigen::Index off = 0;
  for (const auto& [k, m] : chain.parts) {
    offsets.push_back(off);
    off += k * m;
  }
  const int ki = chain.parts[a].first, kj = chain.parts[b].first;
  const Eigen::Index mi = chain.parts[a].second, mj = chain.parts[b].second;
  // n_i > n_j: pad-and-shift from the smaller block into the larger one.
  // n_j - n_i > j - i: truncation from the larger block into the smaller one.
  const bool up = chain.values[a] > chain.values[b];
  const int to_k = up ? kj : ki, from_k = up ? ki : kj;
  const Eigen::Index to_m = up ? mj : mi, from_m = up ? mi : mj;
  const Eigen::Index to_off = up ? offsets[b] : offsets[a];
  const Eigen::Index from_off = up ? offsets[a] : offsets[b];
  const Matrix scalar = model_intertwiner(to_k, from_k, {1.0});
  Matrix w = Matrix::Zero(off, off);
  for (int p = 0; p < to_k; ++p)
    for (int q = 0; q < from_k; ++q)
      if (scalar(p, q) != cplx(0.0)) w(to_off + p * to_m, from_off + q * from_m) = scalar(p, q);
  return w;
}

}  // namespace ppi
