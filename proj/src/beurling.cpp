#include "ppi/beurling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppi/kernels.hpp"
#include "ppi/random.hpp"

namespace ppi {

namespace {

void phase_normalize(Matrix& basis) {
  for (Eigen::Index c = 0; c < basis.cols(); ++c)
    for (Eigen::Index r = 0; r < basis.rows(); ++r) {
      const cplx x = basis(r, c);
      if (std::abs(x) > 1e-8) {
        basis.col(c) *= std::conj(x) / std::abs(x);
        break;
      }
    }
}

Subspace range_or_zero(const Matrix& a, Eigen::Index ambient, const Tol& tol) {
  if (a.cols() == 0) return Subspace::zero(ambient);
  return orthonormal_range(a, tol, Cutoff::unit);
}

double op_residual(const Matrix& basis, const Matrix& op) {
  return kernels::invariance_residuals_serial(basis, {op}).front();
}

}  // namespace

// ---- J_k factorization -----------------------------------------------------

Factorization factor_invariant_jk(const Subspace& m, Eigen::Index coeff_dim, int k, const Tol& tol) {
  if (k < 1 || coeff_dim < 1) throw Error(ErrorKind::BadSpec, "need k >= 1 and coeff_dim >= 1");
  const Eigen::Index e = coeff_dim;
  if (m.ambient_dim() != e * k) throw Error(ErrorKind::DimMismatch, "subspace does not live on E (x) C^k");
  const auto inv = is_invariant(m, jk_matrix(e, k), tol);
  if (!inv.flag) throw Error(ErrorKind::NotInvariant, "J_k invariance residual " + std::to_string(inv.residual));

  const Eigen::Index win = e * (k + 1);
  const Eigen::Index r = m.rank();
  Matrix w = Matrix::Zero(win, r + e);
  w.topLeftCorner(e * k, r) = m.basis();
  w.bottomRightCorner(e, e).setIdentity();
  Matrix zw = Matrix::Zero(win, r);
  zw.bottomRows(e * k) = m.basis();
  const Matrix wander = w - zw * (zw.adjoint() * w);
  const Subspace wsp = orthonormal_range(wander, tol, Cutoff::unit);
  if (wsp.rank() != e)
    throw Error(ErrorKind::RankDeficient, "wandering subspace has dimension " + std::to_string(wsp.rank()) +
                                              ", expected " + std::to_string(e));

  Eigen::ColPivHouseholderQR<Matrix> qr(project(wsp));
  Matrix basis = Matrix(qr.householderQ()).leftCols(e);
  phase_normalize(basis);

  std::vector<Matrix> th, ph;
  for (int deg = 0; deg <= k; ++deg) th.push_back(basis.middleRows(deg * e, e));
  for (int deg = 0; deg <= k; ++deg) ph.push_back(adj(th[static_cast<std::size_t>(k - deg)]));
  Factorization f;
  f.k = k;
  f.coeff_dim = e;
  f.theta = Symbol(e, e, 0, std::move(th));
  f.phi = Symbol(e, e, 0, std::move(ph));
  return f;
}

Reconstruction reconstruct(const Factorization& f, const Tol& tol) {
  const Eigen::Index e = f.coeff_dim;
  const int k = f.k;
  const Subspace ker = kernel(adj(toeplitz(f.phi, k - 1, k - 1)), tol, Cutoff::unit);
  Reconstruction rec;
  if (ker.is_zero()) {
    rec.subspace = Subspace::zero(e * k);
    return rec;
  }
  const Matrix img = toeplitz(f.theta, k - 1, 2 * k - 1) * ker.basis();
  rec.leak = op_norm(img.bottomRows(e * k));
  rec.subspace = orthonormal_range(img.topRows(e * k), tol, Cutoff::unit);
  return rec;
}

bool FactorizationReport::ok(const Tol& tol) const noexcept {
  return theta_analytic && phi_analytic &&
         std::max({theta_inner, phi_inner, product, gap, leak, invariance}) <= tol.residual_abs;
}

FactorizationReport verify_factorization(const Factorization& f, const Subspace& m, const Tol& tol) {
  FactorizationReport rep;
  rep.theta_analytic = f.theta.is_analytic();
  rep.phi_analytic = f.phi.is_analytic() && f.phi.trimmed(1e-14).m_hi() <= f.k;
  rep.theta_inner = isometric_check(f.theta, tol).residual;
  rep.phi_inner = isometric_check(f.phi, tol).residual;
  const Symbol prod = f.theta * f.phi;
  const Matrix eye = identity(f.coeff_dim);
  for (int j = std::min(prod.m_lo(), 0); j <= std::max(prod.m_hi(), f.k); ++j) {
    const Matrix target = j == f.k ? eye : Matrix::Zero(f.coeff_dim, f.coeff_dim);
    rep.product = std::max(rep.product, op_norm(prod.coeff(j) - target));
  }
  const Reconstruction rec = reconstruct(f, tol);
  rep.leak = rec.leak;
  rep.gap = rec.subspace.rank() == m.rank() ? subspace_gap(rec.subspace, m) : 1.0;
  rep.invariance = is_invariant(rec.subspace, jk_matrix(f.coeff_dim, f.k), tol).residual;
  return rep;
}

// ---- c.n.u. model ------------------------------------------------------------

void CnuSpaces::validate() const {
  if (dim_F < 0 || dim_E < 0 || degree < 0) throw Error(ErrorKind::BadSpec, "negative dimension or degree");
  if (normalize_parts(parts) != parts) throw Error(ErrorKind::BadSpec, "parts must be sorted, distinct and nonzero");
  for (const auto& [k, m] : parts)
    if (degree < k) throw Error(ErrorKind::BadSpec, "degree " + std::to_string(degree) + " below part index " +
                                                        std::to_string(k));
}

Eigen::Index CnuSpaces::model_dim() const { return chain_ambient_dim(parts); }

Eigen::Index CnuSpaces::coeff_dim_model() const {
  Eigen::Index d = 0;
  for (const auto& p : parts) d += p.second;
  return d;
}

Eigen::Index CnuSpaces::offset_E() const { return dim_F * (degree + 1); }
Eigen::Index CnuSpaces::offset_model() const { return offset_E() + dim_E * (degree + 1); }
Eigen::Index CnuSpaces::total_dim() const { return offset_model() + model_dim(); }

Eigen::Index CnuSpaces::offset_part(std::size_t i) const {
  Eigen::Index off = offset_model();
  for (std::size_t a = 0; a < i; ++a) off += parts[a].first * parts[a].second;
  return off;
}

Matrix cnu_operator(const CnuSpaces& s) {
  s.validate();
  return direct_sum({adj(shift_matrix(s.dim_F, s.degree)), shift_matrix(s.dim_E, s.degree), chain_operator(s.parts)});
}

int w_phi_input_degree(const Symbol& phi_e, const CnuSpaces& s) {
  return s.degree - std::max(phi_e.m_hi(), 0) - 1;
}

namespace {

void check_w_phi_inputs(const Symbol& phi_f, const Symbol& phi_e, const Symbol& phi_model, const CnuSpaces& s,
                        const Tol& tol) {
  s.validate();
  if (phi_f.dim_out() != s.dim_F || phi_e.dim_out() != s.dim_E || phi_model.dim_out() != s.coeff_dim_model())
    throw Error(ErrorKind::ShapeMismatch, "symbol rows do not match F, E and the model coefficient spaces");
  if (phi_f.dim_in() != phi_e.dim_in() || phi_e.dim_in() != phi_model.dim_in())
    throw Error(ErrorKind::ShapeMismatch, "symbols must share the input space F0");
  if (!phi_e.is_analytic()) throw Error(ErrorKind::NotAnalytic, "Phi_E has negative Fourier coefficients");
  if (!phi_model.is_analytic()) throw Error(ErrorKind::NotAnalytic, "Phi_E' has negative Fourier coefficients");
  const Symbol stacked = Symbol::stack({phi_f, phi_e, phi_model});
  if (!stacked.is_zero()) {
    const auto chk = isometric_check(stacked, tol);
    if (!chk.ok)
      throw Error(ErrorKind::NotIsometricSymbol,
                  "stacked symbol fails at lag " + std::to_string(*chk.first_failing_lag) + " (residual " +
                      std::to_string(chk.residual) + ")");
  }
  const int g = w_phi_input_degree(phi_e, s);
  if (g < 1) throw Error(ErrorKind::MarginExceeded, "degree " + std::to_string(s.degree) + " leaves no input room");
  if (!phi_f.is_zero() && -phi_f.m_lo() > s.degree)
    throw Error(ErrorKind::MarginExceeded, "Phi_F reaches degree " + std::to_string(phi_f.m_lo()) +
                                               " below the truncation");
}

}  // namespace

Matrix build_w_phi(const Symbol& phi_f, const Symbol& phi_e, const Symbol& phi_model, const CnuSpaces& s,
                   const Tol& tol) {
  check_w_phi_inputs(phi_f, phi_e, phi_model, s, tol);
  const int n = s.degree;
  const int g = w_phi_input_degree(phi_e, s);
  const Eigen::Index f0 = phi_e.dim_in();
  Matrix wstar = Matrix::Zero(s.total_dim(), f0 * (g + 1));
  if (s.dim_F > 0) wstar.middleRows(s.offset_F(), s.dim_F * (n + 1)) = hankel(phi_f, g, n);
  if (s.dim_E > 0) wstar.middleRows(s.offset_E(), s.dim_E * (n + 1)) = toeplitz(phi_e, g, n);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < s.parts.size(); ++i) {
    const auto [k, m] = s.parts[i];
    wstar.middleRows(s.offset_part(i), m * k) = toeplitz(phi_model.row_block(row, m), g, k - 1);
    row += m;
  }
  return adj(wstar);
}

SymbolInvariant invariant_from_symbols(const Symbol& phi_f, const Symbol& phi_e, const Symbol& phi_model,
                                       const std::optional<Symbol>& theta, const CnuSpaces& s, const Tol& tol) {
  const Matrix wstar = adj(build_w_phi(phi_f, phi_e, phi_model, s, tol));
  const int g = w_phi_input_degree(phi_e, s);
  const Eigen::Index f0 = phi_e.dim_in();
  const Eigen::Index total = s.total_dim();

  Matrix th_part(total, 0);
  if (theta && s.dim_F > 0) {
    if (theta->dim_out() != s.dim_F) throw Error(ErrorKind::ShapeMismatch, "Theta must map into F");
    if (!theta->is_analytic()) throw Error(ErrorKind::NotAnalytic, "Theta has negative Fourier coefficients");
    const Subspace ker = kernel(adj(toeplitz(*theta, s.degree, s.degree)), tol, Cutoff::unit);
    th_part = Matrix::Zero(total, ker.rank());
    th_part.topRows(s.dim_F * (s.degree + 1)) = ker.basis();
  }

  Matrix gen(total, wstar.cols() + th_part.cols());
  gen << wstar, th_part;
  Matrix test(total, f0 * g + th_part.cols());
  test << wstar.leftCols(f0 * g), th_part;

  SymbolInvariant out;
  out.input_degree = g;
  out.subspace = range_or_zero(gen, total, tol);
  const Subspace tsp = range_or_zero(test, total, tol);
  const Matrix t = cnu_operator(s);
  if (!tsp.is_zero()) {
    const Matrix tb = t * tsp.basis();
    const Matrix p = out.subspace.is_zero() ? Matrix::Zero(total, 0) : out.subspace.basis();
    out.invariance = op_norm(tb - p * (p.adjoint() * tb));
  }
  return out;
}

Symbol potapov_product(const std::vector<Matrix>& projections) {
  if (projections.empty()) throw Error(ErrorKind::BadSpec, "empty Potapov product");
  const Eigen::Index d = projections.front().rows();
  Symbol out = Symbol::constant(identity(d));
  for (const auto& p : projections) out = out * Symbol(d, d, 0, {identity(d) - p, p});
  return out;
}

// ---- hyperinvariant candidates -----------------------------------------------

namespace {

Symbol scalar_times_identity(const Symbol& u, Eigen::Index d) {
  std::vector<Matrix> cs;
  for (int m = u.m_lo(); m <= u.m_hi(); ++m) cs.push_back(u.coeff(m)(0, 0) * identity(d));
  return Symbol(d, d, u.m_lo(), std::move(cs));
}

void require_scalar_inner(const Symbol& u, const char* name, const Tol& tol) {
  if (u.dim_out() != 1 || u.dim_in() != 1) throw Error(ErrorKind::ShapeMismatch, std::string(name) + " must be scalar");
  if (!u.is_analytic()) throw Error(ErrorKind::NotAnalytic, std::string(name) + " must be analytic");
  const auto chk = isometric_check(u, tol);
  if (!chk.ok) throw NotInnerError(*chk.first_failing_lag, chk.residual);
}

// u H^2_E on degrees <= N, and the part reachable from inputs of degree <= n_in.
Subspace forward_part(const Symbol& u, Eigen::Index dim_e, int n, int n_in, const Tol& tol) {
  if (dim_e == 0) return Subspace::zero(0);
  if (u.is_zero() || n_in < 0) return Subspace::zero(dim_e * (n + 1));
  return orthonormal_range(toeplitz(scalar_times_identity(u, dim_e), n_in, n), tol, Cutoff::unit);
}

Chain check_chain(const Chain& chain, const CnuSpaces& s) {
  if (chain.parts != s.parts) throw Error(ErrorKind::BadSpec, "chain parts differ from the space's parts");
  if (!is_admissible(chain)) throw Error(ErrorKind::ChainInadmissible, "chain violates the admissibility rule");
  return chain;
}

Candidate assemble(const Subspace& f, const Subspace& e, const Subspace& e_test, const Chain& chain) {
  const Subspace model = chain_subspace(chain);
  Candidate c;
  c.subspace = direct_sum_subspaces({f, e, model});
  c.test = direct_sum_subspaces({f, e_test, model});
  return c;
}

void u_obstructions(const Symbol& u, const Chain& chain, Candidate& c) {
  const auto ord = zero_order(u);
  if (!ord) return;
  for (std::size_t i = 0; i < chain.parts.size(); ++i) {
    const int k = chain.parts[i].first;
    const int need = k - chain.values[i];
    if (*ord < need) c.obstructions.push_back({'u', k, need, *ord});
  }
}

void v_obstructions(const Symbol& v, const Chain& chain, Candidate& c) {
  const auto ord = zero_order(v);
  if (!ord) return;
  for (std::size_t i = 0; i < chain.parts.size(); ++i) {
    const int need = chain.values[i];
    if (*ord < need) c.obstructions.push_back({'v', chain.parts[i].first, need, *ord});
  }
}

Candidate forward_candidate(const Symbol& u, const Subspace& f, const Chain& chain, const CnuSpaces& s,
                            const Tol& tol) {
  const int n = s.degree;
  int n_in = n, n_test = n;
  if (!u.is_zero()) {
    require_scalar_inner(u, "u", tol);
    n_in = n - u.m_hi();
    n_test = n_in - kSampleDegree;
    if (s.dim_E > 0 && n_test < 0)
      throw Error(ErrorKind::MarginExceeded, "u has degree " + std::to_string(u.m_hi()) + " beyond the truncation");
  }
  Candidate c = assemble(f, forward_part(u, s.dim_E, n, n_in, tol), forward_part(u, s.dim_E, n, n_test, tol), chain);
  if (!u.is_zero()) u_obstructions(u, chain, c);
  c.valid = c.obstructions.empty();
  return c;
}

}  // namespace

Candidate hyper_candidate_pure(const Symbol& u, const Chain& chain, const CnuSpaces& s, const Tol& tol) {
  s.validate();
  if (s.dim_F != 0) throw Error(ErrorKind::BadSpec, "pure candidates live on spaces without a backward shift");
  check_chain(chain, s);
  return forward_candidate(u, Subspace::zero(0), chain, s, tol);
}

Candidate hyper_candidate_cnu(CnuForm form, const Symbol& uv, const Chain& chain, const CnuSpaces& s,
                              const Tol& tol) {
  s.validate();
  check_chain(chain, s);
  const Eigen::Index fd = s.dim_F * (s.degree + 1);
  const Eigen::Index ed = s.dim_E * (s.degree + 1);
  switch (form) {
    case CnuForm::backward_full: {
      Candidate c = assemble(Subspace::full(fd), Subspace::zero(ed), Subspace::zero(ed), chain);
      c.valid = true;
      return c;
    }
    case CnuForm::backward_model: {
      Subspace f = Subspace::full(fd);
      if (!uv.is_zero()) {
        require_scalar_inner(uv, "v", tol);
        if (s.dim_F > 0)
          f = kernel(adj(toeplitz(scalar_times_identity(uv, s.dim_F), s.degree, s.degree)), tol, Cutoff::unit);
      }
      Candidate c = assemble(f, Subspace::zero(ed), Subspace::zero(ed), chain);
      if (!uv.is_zero()) v_obstructions(uv, chain, c);
      c.valid = c.obstructions.empty();
      return c;
    }
    case CnuForm::forward_full:
      return forward_candidate(uv, Subspace::full(fd), chain, s, tol);
  }
  throw Error(ErrorKind::BadSpec, "unknown form");
}

// ---- embedded intertwiners ---------------------------------------------------

Matrix embed_model_toeplitz(const Symbol& phi, const CnuSpaces& s) {
  if (phi.dim_out() != s.coeff_dim_model() || phi.dim_in() != s.dim_E)
    throw Error(ErrorKind::ShapeMismatch, "Phi must map E into the model coefficients");
  if (!phi.is_analytic()) throw Error(ErrorKind::NotAnalytic, "Phi must be analytic");
  Matrix out = Matrix::Zero(s.total_dim(), s.total_dim());
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < s.parts.size(); ++i) {
    const auto [k, m] = s.parts[i];
    out.block(s.offset_part(i), s.offset_E(), m * k, s.dim_E * (s.degree + 1)) =
        toeplitz(phi.row_block(row, m), s.degree, k - 1);
    row += m;
  }
  return out;
}

Matrix embed_model_hankel(const Symbol& phi, std::size_t part, const CnuSpaces& s) {
  if (part >= s.parts.size()) throw Error(ErrorKind::BadSpec, "part index out of range");
  const auto [k, m] = s.parts[part];
  if (phi.dim_out() != s.dim_F || phi.dim_in() != m)
    throw Error(ErrorKind::ShapeMismatch, "Phi must map E_k into F");
  if (!phi.is_zero() && phi.m_lo() < -(k - 1))
    throw Error(ErrorKind::BadSpec, "Phi reaches below degree -(k-1); z^k H^2 would leave the kernel");
  Matrix out = Matrix::Zero(s.total_dim(), s.total_dim());
  out.block(s.offset_F(), s.offset_part(part), s.dim_F * (s.degree + 1), m * k) = hankel(phi, k - 1, s.degree);
  return out;
}

Matrix embed_forward_toeplitz(const Symbol& psi, const CnuSpaces& s) {
  if (psi.dim_out() != s.dim_E || psi.dim_in() != s.dim_E) throw Error(ErrorKind::ShapeMismatch, "Psi must act on E");
  if (!psi.is_analytic()) throw Error(ErrorKind::NotAnalytic, "Psi must be analytic");
  const Eigen::Index ed = s.dim_E * (s.degree + 1);
  Matrix out = Matrix::Zero(s.total_dim(), s.total_dim());
  out.block(s.offset_E(), s.offset_E(), ed, ed) = toeplitz(psi, s.degree, s.degree);
  return out;
}

Matrix embed_backward_toeplitz_adj(const Symbol& psi, const CnuSpaces& s) {
  if (psi.dim_out() != s.dim_F || psi.dim_in() != s.dim_F) throw Error(ErrorKind::ShapeMismatch, "Psi must act on F");
  if (!psi.is_analytic()) throw Error(ErrorKind::NotAnalytic, "Psi must be analytic");
  const Eigen::Index fd = s.dim_F * (s.degree + 1);
  Matrix out = Matrix::Zero(s.total_dim(), s.total_dim());
  out.block(s.offset_F(), s.offset_F(), fd, fd) = adj(toeplitz(psi, s.degree, s.degree));
  return out;
}

Matrix embed_cross_hankel(const Symbol& phi, const CnuSpaces& s) {
  if (phi.dim_out() != s.dim_F || phi.dim_in() != s.dim_E) throw Error(ErrorKind::ShapeMismatch, "Phi must map E into F");
  if (!phi.is_zero() && phi.m_lo() < -s.degree) throw Error(ErrorKind::MarginExceeded, "Phi reaches below -N");
  Matrix out = Matrix::Zero(s.total_dim(), s.total_dim());
  out.block(s.offset_F(), s.offset_E(), s.dim_F * (s.degree + 1), s.dim_E * (s.degree + 1)) =
      hankel(phi, s.degree, s.degree);
  return out;
}

Matrix embed_model_commutant(const std::vector<std::vector<std::vector<Matrix>>>& coeffs, const CnuSpaces& s) {
  const std::size_t np = s.parts.size();
  if (coeffs.size() != np) throw Error(ErrorKind::ShapeMismatch, "coefficient table must be parts x parts");
  Matrix out = Matrix::Zero(s.total_dim(), s.total_dim());
  for (std::size_t a = 0; a < np; ++a) {
    if (coeffs[a].size() != np) throw Error(ErrorKind::ShapeMismatch, "coefficient table must be parts x parts");
    for (std::size_t b = 0; b < np; ++b) {
      const auto [ki, mi] = s.parts[a];
      const auto [kj, mj] = s.parts[b];
      const int pad = std::max(ki - kj, 0);
      const int free = std::min(ki, kj);
      const auto& th = coeffs[a][b];
      for (int p = 0; p < ki; ++p)
        for (int q = 0; q < kj; ++q) {
          const int idx = p - q - pad + 1;
          if (idx < 1 || idx > free || static_cast<std::size_t>(idx) > th.size()) continue;
          const Matrix& c = th[static_cast<std::size_t>(idx - 1)];
          if (c.rows() != mi || c.cols() != mj) throw Error(ErrorKind::ShapeMismatch, "block coefficient shape");
          out.block(s.offset_part(a) + p * mi, s.offset_part(b) + q * mj, mi, mj) = c;
        }
    }
  }
  return out;
}

// ---- sampling ----------------------------------------------------------------

namespace {

Symbol random_symbol(rnd::Rng& rng, Eigen::Index rows, Eigen::Index cols, int lo, int hi) {
  std::vector<Matrix> cs;
  for (int m = lo; m <= hi; ++m) cs.push_back(rnd::gaussian_matrix(rng, rows, cols));
  return Symbol(rows, cols, lo, std::move(cs));
}

Subspace safe_range(const CnuSpaces& s) {
  std::vector<Eigen::Index> axes;
  for (Eigen::Index i = 0; i < s.offset_E(); ++i) axes.push_back(i);
  const int top = s.degree - kSampleDegree - 1;
  for (int deg = 0; deg <= top; ++deg)
    for (Eigen::Index c = 0; c < s.dim_E; ++c) axes.push_back(s.offset_E() + deg * s.dim_E + c);
  for (Eigen::Index i = s.offset_model(); i < s.total_dim(); ++i) axes.push_back(i);
  return Subspace::coordinate(s.total_dim(), axes);
}

enum class Family { model_toeplitz, model_hankel, forward_toeplitz, backward_toeplitz, cross_hankel, model_commutant };

const char* family_name(Family f) {
  switch (f) {
    case Family::model_toeplitz: return "P_E T_Phi (forward shift -> model)";
    case Family::model_hankel: return "H_Phi|E_k (model -> backward shift)";
    case Family::forward_toeplitz: return "T_Psi on H^2_E";
    case Family::backward_toeplitz: return "T_Psi^* on H^2_F";
    case Family::cross_hankel: return "H_Phi (forward -> backward shift)";
    case Family::model_commutant: return "commutant of the truncated shifts";
  }
  return "";
}

Matrix sample_family(Family fam, const CnuSpaces& s, rnd::Rng& rng) {
  const int n = s.degree;
  switch (fam) {
    case Family::model_toeplitz:
      return embed_model_toeplitz(random_symbol(rng, s.coeff_dim_model(), s.dim_E, 0, rnd::uniform_int(rng, 0, n)), s);
    case Family::model_hankel: {
      Matrix out = Matrix::Zero(s.total_dim(), s.total_dim());
      for (std::size_t i = 0; i < s.parts.size(); ++i) {
        const auto [k, m] = s.parts[i];
        out += embed_model_hankel(random_symbol(rng, s.dim_F, m, -(k - 1), 0), i, s);
      }
      return out;
    }
    case Family::forward_toeplitz:
      return embed_forward_toeplitz(random_symbol(rng, s.dim_E, s.dim_E, 0, rnd::uniform_int(rng, 0, kSampleDegree)), s);
    case Family::backward_toeplitz:
      return embed_backward_toeplitz_adj(random_symbol(rng, s.dim_F, s.dim_F, 0, rnd::uniform_int(rng, 0, n)), s);
    case Family::cross_hankel:
      return embed_cross_hankel(random_symbol(rng, s.dim_F, s.dim_E, -n, 0), s);
    case Family::model_commutant: {
      const std::size_t np = s.parts.size();
      std::vector<std::vector<std::vector<Matrix>>> co(np, std::vector<std::vector<Matrix>>(np));
      for (std::size_t a = 0; a < np; ++a)
        for (std::size_t b = 0; b < np; ++b) {
          const int free = std::min(s.parts[a].first, s.parts[b].first);
          for (int t = 0; t < free; ++t)
            co[a][b].push_back(rnd::gaussian_matrix(rng, s.parts[a].second, s.parts[b].second));
        }
      return embed_model_commutant(co, s);
    }
  }
  return {};
}

double commutator_on(const Matrix& op, const Matrix& t, const Subspace& safe) {
  if (safe.is_zero()) return 0.0;
  return op_norm((op * t - t * op) * safe.basis());
}

}  // namespace

std::vector<SampledForm> sampled_hyperinvariance(const Candidate& c, const CnuSpaces& s, std::uint64_t seed,
                                                 int samples, bool parallel) {
  s.validate();
  const bool has_f = s.dim_F > 0, has_e = s.dim_E > 0, has_m = !s.parts.empty();
  std::vector<Family> fams;
  if (has_e && has_m) fams.push_back(Family::model_toeplitz);
  if (has_m && has_f) fams.push_back(Family::model_hankel);
  if (has_e) fams.push_back(Family::forward_toeplitz);
  if (has_f) fams.push_back(Family::backward_toeplitz);
  if (has_e && has_f) fams.push_back(Family::cross_hankel);
  if (has_m) fams.push_back(Family::model_commutant);

  const Matrix t = cnu_operator(s);
  const Subspace safe = safe_range(s);
  const Matrix& mb = c.subspace.basis();
  std::vector<SampledForm> out;
  for (std::size_t f = 0; f < fams.size(); ++f) {
    std::vector<double> res(static_cast<std::size_t>(samples), 0.0), com(static_cast<std::size_t>(samples), 0.0);
    auto one = [&](int i) {
      rnd::Rng rng(seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(fams[f]) + 1)) ^
                   (static_cast<std::uint64_t>(i) * 0xBF58476D1CE4E5B9ULL));
      Matrix op = sample_family(fams[f], s, rng);
      const double nrm = op_norm(op);
      if (nrm > 0) op /= nrm;
      const auto idx = static_cast<std::size_t>(i);
      if (!c.test.is_zero()) {
        const Matrix sb = op * c.test.basis();
        res[idx] = c.subspace.is_zero() ? op_norm(sb) : op_norm(sb - mb * (mb.adjoint() * sb));
      }
      com[idx] = commutator_on(op, t, safe);
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
      for (int i = 0; i < samples; ++i) one(i);
    } else {
      for (int i = 0; i < samples; ++i) one(i);
    }
    SampledForm sf;
    sf.name = family_name(fams[f]);
    sf.samples = samples;
    if (samples > 0) {
      sf.worst_residual = *std::max_element(res.begin(), res.end());
      sf.worst_commutator = *std::max_element(com.begin(), com.end());
    }
    out.push_back(std::move(sf));
  }
  return out;
}

std::vector<Witness> divisibility_witnesses(const Candidate& c, const CnuSpaces& s) {
  const Matrix t = cnu_operator(s);
  const Subspace safe = safe_range(s);
  std::vector<Witness> out;
  for (const auto& ob : c.obstructions) {
    std::size_t part = 0;
    while (part < s.parts.size() && s.parts[part].first != ob.k) ++part;
    if (part == s.parts.size()) throw Error(ErrorKind::BadSpec, "obstruction at an absent index");
    Eigen::Index row = 0;
    for (std::size_t a = 0; a < part; ++a) row += s.parts[a].second;
    Witness w;
    w.obstruction = ob;
    if (ob.symbol == 'u') {
      // Constant map E -> E_k sending the first basis vector to the first one.
      Matrix c0 = Matrix::Zero(s.coeff_dim_model(), s.dim_E);
      c0(row, 0) = 1.0;
      w.op = embed_model_toeplitz(Symbol::constant(c0), s);
    } else {
      // phi z^{-(k-1)} : E_k -> F.
      Matrix c0 = Matrix::Zero(s.dim_F, s.parts[part].second);
      c0(0, 0) = 1.0;
      w.op = embed_model_hankel(Symbol::monomial(c0, -(ob.k - 1)), part, s);
    }
    w.residual = c.subspace.is_zero() ? 0.0 : op_residual(c.subspace.basis(), w.op);
    w.commutator = commutator_on(w.op, t, safe);
    out.push_back(std::move(w));
  }
  return out;
}

Counterexample counterexample(int degree, const Tol& tol) {
  Counterexample ex;
  ex.spaces.dim_F = 0;
  ex.spaces.dim_E = 1;
  ex.spaces.parts = {{1, 1}, {2, 1}, {3, 1}, {4, 1}};
  ex.spaces.degree = degree;
  const Symbol u = Symbol::monomial(Matrix::Ones(1, 1), 1);
  const Chain ones{ex.spaces.parts, {1, 1, 1, 1}};
  const Candidate bad = hyper_candidate_pure(u, ones, ex.spaces, tol);
  ex.m = bad.subspace;
  // S': f -> P_K (0, 0, 0, z f).
  Matrix c1 = Matrix::Zero(4, 1);
  c1(3, 0) = 1.0;
  ex.s_prime = embed_model_toeplitz(Symbol::monomial(c1, 1), ex.spaces);
  ex.violation = op_residual(ex.m.basis(), ex.s_prime);
  ex.commutator = commutator_on(ex.s_prime, cnu_operator(ex.spaces), safe_range(ex.spaces));
  const Chain repaired{ex.spaces.parts, {0, 1, 2, 3}};
  ex.repaired = hyper_candidate_pure(u, repaired, ex.spaces, tol);
  return ex;
}

}  // namespace ppi
