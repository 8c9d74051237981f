#include "ppi/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "ppi/beurling.hpp"
#include "ppi/hardy.hpp"
#include "ppi/lattice.hpp"
#include "ppi/pisom.hpp"
#include "ppi/random.hpp"

namespace ppi::acceptance {

namespace {

using rnd::Rng;
using Parts = std::vector<std::pair<int, Eigen::Index>>;

// Thresholds pinned by the acceptance criteria.
constexpr double kTight = 1e-10;
constexpr double kLoose = 1e-8;
constexpr double kWitnessFloor = 0.1;

bool desk(const Config& c) { return c.scale == Scale::desk; }
int pick(const Config& c, int desk_n, int smoke_n) { return desk(c) ? desk_n : smoke_n; }

Rng stream(const Config& c, int id) { return Rng(c.seed * 1000003ULL + static_cast<std::uint64_t>(id)); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

struct Tally {
  double worst = 0;
  long count = 0;
  long failures = 0;
  void add(double r, bool ok) {
    worst = std::max(worst, r);
    ++count;
    if (!ok) ++failures;
  }
};

Matrix conjugate(const Matrix& q, const Matrix& t) { return q * t * adj(q); }

// ---- 1 ---------------------------------------------------------------------

CriterionResult c1(const Config& cfg) {
  Rng rng = stream(cfg, 1);
  const int n_samples = pick(cfg, 100, 25);
  const int max_dim = pick(cfg, 16, 8);
  Tally pos, neg;
  long disagreements = 0;
  for (int s = 0; s < n_samples; ++s) {
    const int n = rnd::uniform_int(rng, 1, max_dim);
    const int r = rnd::uniform_int(rng, 0, n);
    const Matrix t = rnd::partial_isometry(rng, n, r);
    const auto rep = is_partial_isometry(t, cfg.tol);
    if (!rep.agree()) ++disagreements;
    pos.add(rep.worst(), rep.is_pi && rep.agree() && rep.worst() <= kTight);

    Matrix noise = rnd::gaussian_matrix(rng, n, n);
    noise *= rnd::uniform(rng, 0.05, 0.5) / op_norm(noise);
    const auto bad = is_partial_isometry(t + noise, cfg.tol);
    if (!bad.agree()) ++disagreements;
    const double least = *std::min_element(bad.residuals.begin(), bad.residuals.end());
    neg.add(least, !bad.is_pi && bad.agree() &&
                       std::none_of(bad.verdicts.begin(), bad.verdicts.end(), [](bool v) { return v; }));
  }
  CriterionResult r;
  r.pass = pos.failures == 0 && neg.failures == 0 && disagreements == 0;
  r.metrics = {{"worst_residual_partial_isometries", pos.worst},
               {"disagreements", static_cast<double>(disagreements)},
               {"non_examples_misclassified", static_cast<double>(neg.failures)}};
  r.detail = std::to_string(pos.count) + " partial isometries, worst residual " + fmt(pos.worst) + "; " +
             std::to_string(neg.count) + " perturbed, " + std::to_string(neg.failures) + " misclassified";
  return r;
}

// ---- 2 ---------------------------------------------------------------------

CriterionResult c2(const Config& cfg) {
  Rng rng = stream(cfg, 2);
  const int n_samples = pick(cfg, 50, 15);
  const int max_dim = pick(cfg, 32, 8);
  Tally t;
  for (int s = 0; s < n_samples; ++s) {
    const auto cp = rnd::random_canonical_ppi(rng, max_dim, 5);
    const Matrix q = rnd::unitary(rng, cp.canonical.rows());
    const auto rep = projection_calculus_check(conjugate(q, cp.canonical), 6, cfg.tol);
    t.add(rep.worst(), rep.worst() <= kTight);
  }
  CriterionResult r;
  r.pass = t.failures == 0;
  r.metrics = {{"worst_residual", t.worst}};
  r.detail = std::to_string(t.count) + " power partial isometries, worst identity residual " + fmt(t.worst);
  return r;
}

// ---- 3 ---------------------------------------------------------------------

CriterionResult c3(const Config& cfg) {
  Rng rng = stream(cfg, 3);
  const int n_samples = pick(cfg, 50, 15);
  const int max_dim = pick(cfg, 64, 8);
  Tally conj, burdak;
  long signature_misses = 0;
  for (int s = 0; s < n_samples; ++s) {
    const auto cp = rnd::random_canonical_ppi(rng, max_dim, 6);
    const Matrix q = rnd::unitary(rng, cp.canonical.rows());
    const Matrix t = conjugate(q, cp.canonical);
    const auto dec = hw_decompose(t, cfg.tol);
    std::map<int, Eigen::Index> want;
    for (const auto& [k, m] : cp.multiplicities) want[k] = m;
    const bool sig = dec.unitary_dim == cp.unitary_dim && dec.multiplicities == want;
    if (!sig) ++signature_misses;
    conj.add(dec.residual, sig && dec.residual <= kLoose);
    for (int p = 1; p <= 5; ++p) {
      const double g = burdak_identity_check(t, p, cfg.tol);
      burdak.add(g, g <= kLoose);
    }
  }
  CriterionResult r;
  r.pass = conj.failures == 0 && burdak.failures == 0;
  r.metrics = {{"signature_misses", static_cast<double>(signature_misses)},
               {"worst_conjugation_residual", conj.worst},
               {"worst_burdak_gap", burdak.worst}};
  r.detail = std::to_string(conj.count) + " decompositions, " + std::to_string(signature_misses) +
             " signature misses, worst residual " + fmt(conj.worst) + ", worst Burdak gap " + fmt(burdak.worst);
  return r;
}

// ---- 4 ---------------------------------------------------------------------

Subspace random_subspace(Rng& rng, Eigen::Index n, Eigen::Index r) {
  if (r == 0) return Subspace::zero(n);
  return Subspace(n, rnd::unitary(rng, n).leftCols(r));
}

CriterionResult c4(const Config& cfg) {
  Rng rng = stream(cfg, 4);
  const int n_samples = pick(cfg, 100, 20);
  Tally built, harvested;
  for (int s = 0; s < n_samples; ++s) {
    const int e = rnd::uniform_int(rng, 1, 3);
    const int k = rnd::uniform_int(rng, 1, 4);
    const Matrix j = jk_matrix(e, k);

    // Constructed S (x) C^k.
    const Subspace sub = random_subspace(rng, e, rnd::uniform_int(rng, 0, e));
    const Subspace m = tensor_with_ck(sub, k);
    double gap = 1.0;
    bool ok = is_reducing(m, j, cfg.tol);
    try {
      const Subspace back = reducing_factor_jk(m, e, k, cfg.tol);
      gap = back.rank() == sub.rank() ? (sub.is_zero() ? 0.0 : subspace_gap(back, sub)) : 1.0;
    } catch (const Error&) {
      ok = false;
    }
    built.add(gap, ok && gap <= kLoose);

    // Spectral projections of a random Hermitian element of {J_k, J_k^*}'.
    const auto basis = joint_commutant_basis({j, adj(j)}, cfg.tol);
    Matrix a = Matrix::Zero(j.rows(), j.cols());
    for (const auto& b : basis) a += rnd::gaussian(rng) * b;
    const Matrix h = (a + adj(a)) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const auto& ev = es.eigenvalues();
    std::vector<std::vector<Eigen::Index>> clusters{{0}};
    for (Eigen::Index i = 1; i < ev.size(); ++i) {
      if (ev(i) - ev(i - 1) > 1e-6) clusters.emplace_back();
      clusters.back().push_back(i);
    }
    std::vector<Eigen::Index> cols;
    for (const auto& c : clusters)
      if (rnd::uniform(rng) < 0.5) cols.insert(cols.end(), c.begin(), c.end());
    Matrix vb(j.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) vb.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(cols[i]);
    const Subspace hm = cols.empty() ? Subspace::zero(j.rows()) : orthonormal_range(vb, cfg.tol, Cutoff::unit);
    double hgap = 1.0;
    bool hok = is_reducing(hm, j, cfg.tol);
    try {
      const Subspace f = reducing_factor_jk(hm, e, k, cfg.tol);
      const Subspace rebuilt = tensor_with_ck(f, k);
      hgap = hm.is_zero() ? (rebuilt.is_zero() ? 0.0 : 1.0) : subspace_gap(rebuilt, hm);
    } catch (const Error&) {
      hok = false;
    }
    harvested.add(hgap, hok && hgap <= kLoose);
  }
  CriterionResult r;
  r.pass = built.failures == 0 && harvested.failures == 0;
  r.metrics = {{"worst_roundtrip_gap", built.worst}, {"worst_harvested_gap", harvested.worst},
               {"failures", static_cast<double>(built.failures + harvested.failures)}};
  r.detail = std::to_string(built.count) + " constructed and " + std::to_string(harvested.count) +
             " harvested reducing subspaces; worst gaps " + fmt(built.worst) + ", " + fmt(harvested.worst);
  return r;
}

// ---- 5 ---------------------------------------------------------------------

// Random vector on E (x) C^k vanishing below a random degree.
Vector structured_vector(Rng& rng, Eigen::Index e, int k) {
  const int low = rnd::uniform_int(rng, 0, k);  // low == k gives the zero vector
  Vector x = Vector::Zero(e * k);
  for (int deg = low; deg < k; ++deg)
    for (Eigen::Index c = 0; c < e; ++c) x(deg * e + c) = rnd::gaussian(rng);
  return x;
}

Subspace orbit_span(const std::vector<Vector>& xs, const Matrix& j, const Tol& tol) {
  const Eigen::Index d = j.rows();
  Matrix gen(d, 0);
  for (const auto& x : xs) {
    Vector v = x;
    for (Eigen::Index n = 0; n < d; ++n) {
      gen.conservativeResize(Eigen::NoChange, gen.cols() + 1);
      gen.col(gen.cols() - 1) = v;
      v = j * v;
    }
  }
  if (gen.cols() == 0 || gen.norm() == 0.0) return Subspace::zero(d);
  return orthonormal_range(gen, tol, Cutoff::unit);
}

CriterionResult c5(const Config& cfg) {
  Rng rng = stream(cfg, 5);
  const int n_samples = pick(cfg, 200, 40);
  Tally prod, inner, gap;
  long errors = 0;
  for (int s = 0; s < n_samples; ++s) {
    const int e = rnd::uniform_int(rng, 1, pick(cfg, 4, 2));
    const int k = rnd::uniform_int(rng, 1, pick(cfg, 5, 4));
    const Matrix j = jk_matrix(e, k);
    std::vector<Vector> xs;
    const int count = rnd::uniform_int(rng, 0, e + 1);
    for (int i = 0; i < count; ++i) xs.push_back(structured_vector(rng, e, k));
    const Subspace m = orbit_span(xs, j, cfg.tol);
    try {
      const auto f = factor_invariant_jk(m, e, k, cfg.tol);
      const auto rep = verify_factorization(f, m, cfg.tol);
      prod.add(rep.product, rep.product <= kLoose);
      const double in = std::max(rep.theta_inner, rep.phi_inner);
      inner.add(in, in <= kTight && rep.theta_analytic && rep.phi_analytic);
      const double g = std::max({rep.gap, rep.leak, rep.invariance});
      gap.add(g, g <= kLoose);
    } catch (const Error&) {
      ++errors;
    }
  }
  CriterionResult r;
  r.pass = errors == 0 && prod.failures == 0 && inner.failures == 0 && gap.failures == 0;
  r.metrics = {{"worst_product_residual", prod.worst}, {"worst_inner_residual", inner.worst},
               {"worst_reconstruction_gap", gap.worst}, {"errors", static_cast<double>(errors)}};
  r.detail = std::to_string(n_samples) + " orbit spans; theta*phi " + fmt(prod.worst) + ", inner " +
             fmt(inner.worst) + ", gap " + fmt(gap.worst) + ", errors " + std::to_string(errors);
  return r;
}

// ---- 6 ---------------------------------------------------------------------

Symbol random_potapov(Rng& rng, Eigen::Index d, int factors) {
  std::vector<Matrix> ps;
  for (int i = 0; i < factors; ++i)
    ps.push_back(rnd::projection(rng, d, rnd::uniform_int(rng, d > 1 ? 1 : 0, static_cast<int>(d))));
  return potapov_product(ps);
}

Symbol column_block(const Symbol& s, Eigen::Index cols) {
  std::vector<Matrix> cs;
  for (const auto& c : s.coeffs()) cs.push_back(c.leftCols(cols));
  return Symbol(s.dim_out(), cols, s.m_lo(), std::move(cs));
}

CnuSpaces random_spaces(Rng& rng, int degree, int max_k, Eigen::Index max_mult, bool with_f, bool with_e) {
  CnuSpaces s;
  s.dim_F = with_f ? rnd::uniform_int(rng, 1, 2) : 0;
  s.dim_E = with_e ? rnd::uniform_int(rng, 1, 2) : 0;
  for (int k = 1; k <= max_k; ++k)
    if (rnd::uniform(rng) < 0.6) s.parts.emplace_back(k, rnd::uniform_int(rng, 1, static_cast<int>(max_mult)));
  s.degree = degree;
  return s;
}

CriterionResult c6(const Config& cfg) {
  Rng rng = stream(cfg, 6);
  const int n_samples = pick(cfg, 50, 10);
  const int degree = 8;
  Tally inv;
  long errors = 0;
  for (int s = 0; s < n_samples; ++s) {
    CnuSpaces sp = random_spaces(rng, degree, 3, 2, true, rnd::uniform(rng) < 0.8);
    const Eigen::Index total_coeff = sp.dim_F + sp.dim_E + sp.coeff_dim_model();
    const Eigen::Index f0 = rnd::uniform_int(rng, 1, static_cast<int>(std::min<Eigen::Index>(2, total_coeff)));
    const Symbol b = column_block(random_potapov(rng, total_coeff, rnd::uniform_int(rng, 1, 3)), f0);
    const int shift = rnd::uniform_int(rng, 0, 3);
    const Symbol phi_f = b.row_block(0, sp.dim_F).shifted(-shift);
    const Symbol phi_e = b.row_block(sp.dim_F, sp.dim_E);
    const Symbol phi_m = b.row_block(sp.dim_F + sp.dim_E, sp.coeff_dim_model());
    std::optional<Symbol> theta;
    if (rnd::uniform(rng) < 0.5) theta = random_potapov(rng, sp.dim_F, rnd::uniform_int(rng, 1, 2));
    try {
      const auto out = invariant_from_symbols(phi_f, phi_e, phi_m, theta, sp, cfg.tol);
      inv.add(out.invariance, out.invariance <= kLoose);
    } catch (const Error&) {
      ++errors;
    }
  }

  // Splitting data: Phi = diag(z Phi_F, Phi_E, Phi_1, Phi_2, ...).
  const int n_split = pick(cfg, 10, 3);
  Tally split;
  for (int s = 0; s < n_split; ++s) {
    CnuSpaces sp = random_spaces(rng, degree, 3, 2, true, true);
    if (sp.parts.empty()) sp.parts = {{2, 1}};
    std::vector<Symbol> diag{random_potapov(rng, sp.dim_F, 1).shifted(1), random_potapov(rng, sp.dim_E, 2)};
    std::vector<Symbol> phik;
    for (const auto& [k, m] : sp.parts) {
      phik.push_back(random_potapov(rng, m, rnd::uniform_int(rng, 1, 2)));
      diag.push_back(phik.back());
    }
    const Symbol big = Symbol::block_diag(diag);
    const Symbol phi_f = big.row_block(0, sp.dim_F);
    const Symbol phi_e = big.row_block(sp.dim_F, sp.dim_E);
    const Symbol phi_m = big.row_block(sp.dim_F + sp.dim_E, sp.coeff_dim_model());
    const Symbol theta = random_potapov(rng, sp.dim_F, 2);
    try {
      const auto out = invariant_from_symbols(phi_f, phi_e, phi_m, theta, sp, cfg.tol);
      const int n = sp.degree;
      // F: N(T_Theta^*), read on the window below deg(Theta) and zero-padded.
      const int dth = theta.trimmed(1e-14).m_hi();
      Matrix kf = Matrix::Zero(sp.dim_F * (n + 1), 0);
      if (dth > 0) {
        const Subspace kf_small = kernel(adj(toeplitz(theta, dth - 1, dth - 1)), cfg.tol, Cutoff::unit);
        kf = Matrix::Zero(sp.dim_F * (n + 1), kf_small.rank());
        kf.topRows(sp.dim_F * dth) = kf_small.basis();
      }
      const Subspace f_block = kf.cols() ? Subspace(sp.dim_F * (n + 1), kf) : Subspace::zero(sp.dim_F * (n + 1));
      // E: R(T_{Phi_E}) on the inputs W_Phi sees.
      const Subspace e_block =
          orthonormal_range(toeplitz(diag[1], out.input_degree, n), cfg.tol, Cutoff::unit);
      // E_k: R(T_{Theta_k}) cap E_k, through the J_k factorization of the
      // complement of N(T_{Phi_k}^*) in E_k.
      std::vector<Subspace> blocks{f_block, e_block};
      double fact_gap = 0;
      for (std::size_t i = 0; i < sp.parts.size(); ++i) {
        const auto [k, m] = sp.parts[i];
        const Subspace ker = kernel(adj(toeplitz(phik[i], k - 1, k - 1)), cfg.tol, Cutoff::unit);
        const Subspace mk = complement(ker.is_zero() ? Subspace::zero(m * k) : ker, cfg.tol);
        const auto fk = factor_invariant_jk(mk, m, k, cfg.tol);
        const auto rec = reconstruct(fk, cfg.tol);
        fact_gap = std::max(fact_gap, rec.subspace.rank() == mk.rank() ? subspace_gap(rec.subspace, mk) : 1.0);
        blocks.push_back(mk);
      }
      const Subspace want = direct_sum_subspaces(blocks);
      double g = want.rank() == out.subspace.rank() ? subspace_gap(want, out.subspace) : 1.0;
      // Blockwise: each summand of M matches on its own coordinates.
      std::vector<std::pair<Eigen::Index, Eigen::Index>> ranges{{sp.offset_F(), sp.dim_F * (n + 1)},
                                                                 {sp.offset_E(), sp.dim_E * (n + 1)}};
      for (std::size_t i = 0; i < sp.parts.size(); ++i)
        ranges.emplace_back(sp.offset_part(i), sp.parts[i].first * sp.parts[i].second);
      for (std::size_t b = 0; b < ranges.size(); ++b) {
        const Subspace got = block_component(out.subspace, ranges[b].first, ranges[b].second, cfg.tol);
        g = std::max(g, got.rank() == blocks[b].rank() ? (got.is_zero() ? 0.0 : subspace_gap(got, blocks[b])) : 1.0);
      }
      g = std::max(g, fact_gap);
      split.add(g, g <= kLoose && out.invariance <= kLoose);
    } catch (const Error&) {
      ++errors;
    }
  }
  CriterionResult r;
  r.pass = errors == 0 && inv.failures == 0 && split.failures == 0;
  r.metrics = {{"worst_invariance", inv.worst}, {"worst_split_gap", split.worst},
               {"errors", static_cast<double>(errors)}};
  r.detail = std::to_string(inv.count) + " symbol triples, worst invariance " + fmt(inv.worst) + "; " +
             std::to_string(split.count) + " splitting cases, worst blockwise gap " + fmt(split.worst);
  return r;
}

// ---- 7 ---------------------------------------------------------------------

CriterionResult c7(const Config& cfg) {
  Rng rng = stream(cfg, 7);
  const int n_samples = pick(cfg, 500, 100);
  long miss = 0, total = 0;
  for (int s = 0; s < n_samples; ++s) {
    const int deg = rnd::uniform_int(rng, 1, 12);
    std::vector<cplx> c(static_cast<std::size_t>(deg + 1));
    for (auto& x : c) x = rnd::gaussian(rng);
    if (s % 2 == 0) {
      double nrm = 0;
      for (auto x : c) nrm += std::norm(x);
      for (auto& x : c) x /= std::sqrt(nrm);
    }
    const Symbol u = Symbol::scalar(0, c);
    bool threw = false;
    try {
      monomial_certificate(u, cfg.tol);
    } catch (const NotInnerError&) {
      threw = true;
    }
    ++total;
    if (is_inner(u, cfg.tol) || !threw) ++miss;
  }
  for (int n = 0; n <= 12; ++n)
    for (int rep = 0; rep < pick(cfg, 8, 2); ++rep) {
      const cplx c = rnd::unimodular(rng);
      std::vector<cplx> co(static_cast<std::size_t>(n + 1), cplx(0.0));
      co.back() = c;
      const Symbol u = Symbol::scalar(0, co);
      ++total;
      try {
        const auto cert = monomial_certificate(u, cfg.tol);
        if (!is_inner(u, cfg.tol) || cert.degree != n || std::abs(cert.coefficient - c) > kTight) ++miss;
      } catch (const Error&) {
        ++miss;
      }
    }
  CriterionResult r;
  r.pass = miss == 0;
  r.metrics = {{"misclassified", static_cast<double>(miss)}, {"cases", static_cast<double>(total)}};
  r.detail = std::to_string(total) + " polynomials, " + std::to_string(miss) + " misclassified";
  return r;
}

// ---- 8 ---------------------------------------------------------------------

CriterionResult c8(const Config& cfg) {
  Rng rng = stream(cfg, 8);
  const int n_samples = pick(cfg, 200, 40);
  std::vector<std::pair<int, int>> shapes;
  for (int e = 1; e <= 3; ++e)
    for (int k = 1; k <= 4; ++k) shapes.emplace_back(e, k);
  std::map<std::pair<int, int>, std::vector<Matrix>> bases;
  Tally sweep;
  for (const auto& [e, k] : shapes) {
    const Matrix j = jk_matrix(e, k);
    bases[{e, k}] = commutant_basis(j, cfg.tol);
    for (int n = 0; n <= k; ++n) {
      const Subspace m = chain_subspace(Chain{{{k, e}}, {n}});
      const auto h = hyperinvariance_sweep(m, bases[{e, k}], cfg.tol);
      sweep.add(h.worst_residual, h.flag && h.worst_residual <= kLoose);
    }
  }
  Tally cyc;
  for (int s = 0; s < n_samples; ++s) {
    const auto [e, k] = shapes[static_cast<std::size_t>(rnd::uniform_int(rng, 0, static_cast<int>(shapes.size()) - 1))];
    const Vector x = structured_vector(rng, e, k);
    const Subspace c = cyclic_closure(x, bases[{e, k}], cfg.tol);
    double best = 1.0;
    int low = k;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (x(i) != cplx(0.0)) {
        low = static_cast<int>(i / e);
        break;
      }
    for (int n = 0; n <= k; ++n) {
      const Subspace m = chain_subspace(Chain{{{k, e}}, {n}});
      if (m.rank() != c.rank()) continue;
      const double g = m.is_zero() ? 0.0 : subspace_gap(m, c);
      // The orbit of a vector starting at degree `low` is N(J^{k-low}).
      if (n == k - low) best = std::min(best, g);
    }
    cyc.add(best, best <= kLoose);
  }
  CriterionResult r;
  r.pass = sweep.failures == 0 && cyc.failures == 0;
  r.metrics = {{"worst_sweep_residual", sweep.worst}, {"worst_cyclic_gap", cyc.worst},
               {"cyclic_misses", static_cast<double>(cyc.failures)}};
  r.detail = std::to_string(sweep.count) + " kernels N(J_k^n) swept (worst " + fmt(sweep.worst) + "); " +
             std::to_string(cyc.count) + " cyclic closures, " + std::to_string(cyc.failures) + " off-lattice";
  return r;
}

// ---- 9 ---------------------------------------------------------------------

std::vector<Parts> part_sets(const Config& cfg) {
  std::vector<Parts> out;
  // Every multiplicity pattern with entries in {0, 1, 2} over k = 1..4.
  for (int code = 1; code < 81; ++code) {
    Parts p;
    int c = code;
    for (int k = 1; k <= 4; ++k) {
      if (c % 3) p.emplace_back(k, c % 3);
      c /= 3;
    }
    if (!desk(cfg) && chain_ambient_dim(p) > 8) continue;
    out.push_back(p);
  }
  return out;
}

// Smallest admissible chain dominating the per-block depths.
std::vector<int> predicted_chain(const Parts& parts, const std::vector<int>& depth) {
  std::vector<int> n(parts.size(), 0);
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const int ki = parts[i].first, ka = parts[a].first;
      const int v = i <= a ? depth[i] : depth[i] - (ki - ka);
      n[a] = std::max(n[a], v);
    }
  return n;
}

CriterionResult c9(const Config& cfg) {
  Rng rng = stream(cfg, 9);
  const auto sets = part_sets(cfg);
  Tally adm, inadm, wit, cyc;
  long chains = 0;
  std::vector<std::vector<Matrix>> bases;
  for (const auto& parts : sets) {
    const Matrix t = chain_operator(parts);
    bases.push_back(commutant_basis(t, cfg.tol));
    for (const auto& ch : enumerate_all_chains(parts)) {
      ++chains;
      const Subspace m = chain_subspace(ch);
      const auto h = hyperinvariance_sweep(m, bases.back(), cfg.tol);
      if (is_admissible(ch)) {
        adm.add(h.worst_residual, h.flag);
      } else {
        inadm.add(h.worst_residual, !h.flag && h.witness.has_value());
        const Matrix w = chain_witness(ch);
        const double comm = op_norm(w * t - t * w);
        const double res = is_invariant(m, w, cfg.tol).residual;
        wit.add(comm, comm <= kTight && res >= 1.0 - kTight);
      }
    }
  }
  const int n_vectors = pick(cfg, 100, 30);
  for (int s = 0; s < n_vectors; ++s) {
    const auto idx = static_cast<std::size_t>(rnd::uniform_int(rng, 0, static_cast<int>(sets.size()) - 1));
    const Parts& parts = sets[idx];
    Vector x = Vector::Zero(chain_ambient_dim(parts));
    std::vector<int> depth;
    Eigen::Index off = 0;
    for (const auto& [k, m] : parts) {
      const int low = rnd::uniform_int(rng, 0, k);
      depth.push_back(k - low);
      for (int deg = low; deg < k; ++deg)
        for (Eigen::Index c = 0; c < m; ++c) x(off + deg * m + c) = rnd::gaussian(rng);
      off += k * m;
    }
    const Subspace got = cyclic_closure(x, bases[idx], cfg.tol);
    const Subspace want = chain_subspace(Chain{parts, predicted_chain(parts, depth)});
    const double g = got.rank() == want.rank() ? (got.is_zero() ? 0.0 : subspace_gap(got, want)) : 1.0;
    cyc.add(g, g <= kLoose && is_admissible(Chain{parts, predicted_chain(parts, depth)}));
  }
  CriterionResult r;
  r.pass = adm.failures == 0 && inadm.failures == 0 && wit.failures == 0 && cyc.failures == 0 && inadm.count > 0;
  r.metrics = {{"part_sets", static_cast<double>(sets.size())},
               {"chains", static_cast<double>(chains)},
               {"worst_admissible_residual", adm.worst},
               {"inadmissible_not_rejected", static_cast<double>(inadm.failures)},
               {"witness_failures", static_cast<double>(wit.failures)},
               {"worst_cyclic_gap", cyc.worst}};
  r.detail = std::to_string(sets.size()) + " part sets, " + std::to_string(adm.count) + " admissible (worst " +
             fmt(adm.worst) + "), " + std::to_string(inadm.count) + " inadmissible with witnesses, " +
             std::to_string(cyc.count) + " cyclic closures (worst gap " + fmt(cyc.worst) + ")";
  return r;
}

// ---- 10 --------------------------------------------------------------------

CriterionResult c10(const Config& cfg) {
  const auto ex = counterexample(8, cfg.tol);
  const int n_samples = pick(cfg, 100, 25);
  const auto forms = sampled_hyperinvariance(ex.repaired, ex.spaces, cfg.seed, n_samples);
  double worst = 0, worst_comm = ex.commutator;
  for (const auto& f : forms) {
    worst = std::max(worst, f.worst_residual);
    worst_comm = std::max(worst_comm, f.worst_commutator);
  }
  CriterionResult r;
  r.pass = std::abs(ex.violation - 1.0) <= kTight && ex.commutator <= kTight && ex.repaired.valid &&
           worst <= kLoose && worst_comm <= kLoose;
  r.metrics = {{"violation_residual", ex.violation},
               {"s_prime_commutator", ex.commutator},
               {"repaired_worst_residual", worst}};
  r.detail = "violation " + fmt(ex.violation) + ", S' commutator " + fmt(ex.commutator) + "; repaired chain over " +
             std::to_string(forms.size()) + " families x " + std::to_string(n_samples) + " samples, worst " + fmt(worst);
  return r;
}

// ---- 11 --------------------------------------------------------------------

Chain random_admissible(Rng& rng, const Parts& parts) {
  const auto all = enumerate_admissible_chains(parts);
  return all[static_cast<std::size_t>(rnd::uniform_int(rng, 0, static_cast<int>(all.size()) - 1))];
}

Symbol random_monomial(Rng& rng, int max_deg) {
  std::vector<cplx> c(static_cast<std::size_t>(rnd::uniform_int(rng, 0, max_deg) + 1), cplx(0.0));
  c.back() = rnd::unimodular(rng);
  return Symbol::scalar(0, c);
}

CriterionResult c11(const Config& cfg) {
  Rng rng = stream(cfg, 11);
  const int n_cases = pick(cfg, 24, 8);
  const int n_samples = pick(cfg, 100, 20);
  Tally valid, witness;
  long n_valid = 0, n_invalid = 0, errors = 0;
  for (int s = 0; s < n_cases; ++s) {
    const int kind = s % 4;  // 0 pure, 1..3 the c.n.u. forms
    CnuSpaces sp = random_spaces(rng, pick(cfg, 8, 6), 4, 2, kind != 0, kind != 2);
    if (!desk(cfg)) sp.dim_F = std::min<Eigen::Index>(sp.dim_F, 1), sp.dim_E = std::min<Eigen::Index>(sp.dim_E, 1);
    if (sp.parts.empty()) sp.parts = {{3, 1}};
    if (!desk(cfg)) {
      Parts small;
      for (const auto& p : sp.parts)
        if (p.first <= 3) small.emplace_back(p.first, 1);
      sp.parts = small.empty() ? Parts{{2, 1}} : small;
    }
    const Chain ch = random_admissible(rng, sp.parts);
    const Symbol uv = random_monomial(rng, 4);
    try {
      Candidate c;
      switch (kind) {
        case 0: c = hyper_candidate_pure(uv, ch, sp, cfg.tol); break;
        case 1: c = hyper_candidate_cnu(CnuForm::backward_full, uv, ch, sp, cfg.tol); break;
        case 2: c = hyper_candidate_cnu(CnuForm::backward_model, uv, ch, sp, cfg.tol); break;
        default: c = hyper_candidate_cnu(CnuForm::forward_full, uv, ch, sp, cfg.tol); break;
      }
      if (c.valid) {
        ++n_valid;
        const auto forms = sampled_hyperinvariance(c, sp, cfg.seed + static_cast<std::uint64_t>(s), n_samples);
        for (const auto& f : forms)
          valid.add(std::max(f.worst_residual, f.worst_commutator), f.worst_residual <= kLoose && f.worst_commutator <= kLoose);
      } else {
        ++n_invalid;
        const auto ws = divisibility_witnesses(c, sp);
        if (ws.size() != c.obstructions.size()) ++errors;
        for (const auto& w : ws) witness.add(w.residual, w.residual >= kWitnessFloor && w.commutator <= kLoose);
      }
    } catch (const Error&) {
      ++errors;
    }
  }
  CriterionResult r;
  r.pass = errors == 0 && valid.failures == 0 && witness.failures == 0 && n_valid > 0 && n_invalid > 0;
  r.metrics = {{"valid_candidates", static_cast<double>(n_valid)},
               {"invalid_candidates", static_cast<double>(n_invalid)},
               {"worst_valid_residual", valid.worst},
               {"witness_failures", static_cast<double>(witness.failures)},
               {"errors", static_cast<double>(errors)}};
  r.detail = std::to_string(n_valid) + " valid candidates (worst sampled residual " + fmt(valid.worst) + "), " +
             std::to_string(n_invalid) + " invalid with " + std::to_string(witness.count) + " witnesses, " +
             std::to_string(witness.failures) + " weak";
  return r;
}

const char* kNames[kCriteria] = {
    "partial isometry criteria agree",
    "projection calculus identities",
    "canonical decomposition round trip",
    "reducing subspaces of J_k are S (x) C^k",
    "invariant subspaces of J_k factor as Theta Phi = z^k",
    "W_Phi subspaces are invariant; splitting form",
    "inner polynomials are monomials",
    "hyperinvariant subspaces of J_k",
    "chain lattice of a sum of truncated shifts",
    "counterexample and its repair",
    "divisibility conditions for shift summands",
};

}  // namespace

CriterionResult run_criterion(int id, const Config& cfg) {
  static const std::function<CriterionResult(const Config&)> fns[kCriteria] = {c1, c2, c3, c4, c5, c6,
                                                                              c7, c8, c9, c10, c11};
  if (id < 1 || id > kCriteria) throw Error(ErrorKind::BadSpec, "criterion id out of range");
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = fns[id - 1](cfg);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.id = id;
  r.name = kNames[id - 1];
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_all(const Config& cfg) {
  std::vector<CriterionResult> out;
  for (int i = 1; i <= kCriteria; ++i) out.push_back(run_criterion(i, cfg));
  return out;
}

Scale parse_scale(const std::string& s) {
  if (s == "smoke") return Scale::smoke;
  if (s == "desk") return Scale::desk;
  throw Error(ErrorKind::BadSpec, "scale must be smoke or desk, got \"" + s + "\"");
}

const char* scale_name(Scale s) { return s == Scale::smoke ? "smoke" : "desk"; }

}  // namespace ppi::acceptance
