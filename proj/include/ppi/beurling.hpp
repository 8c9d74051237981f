#pragma once

// Invariant subspaces of truncated shifts through inner factorizations, the
// W_Phi construction for c.n.u. power partial isometries, and hyperinvariant
// candidates with their obstructions.
//
// The c.n.u. model is laid out as [H^2_F | H^2_E | E_1 (+) E_2 (+) ...]:
// both Hardy summands truncated at degree N, each model block E_k in the
// degree-major order of jk_matrix. The operator is
// (M_z^F)^* (+) M_z^E (+) (+)_k J_k.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ppi/hardy.hpp"
#include "ppi/lattice.hpp"

namespace ppi {

// ---- invariant subspaces of J_k --------------------------------------------

struct Factorization {
  int k = 1;
  Eigen::Index coeff_dim = 1;
  Symbol theta;
  Symbol phi;
};

/// Theta from an orthonormal basis of W (-) zW, W = M (+) z^k H^2, computed on
/// the window of degrees 0..k; Phi(m) = Theta(k - m)^*.
Factorization factor_invariant_jk(const Subspace& m, Eigen::Index coeff_dim, int k, const Tol& tol = {});

/// T_Theta(N(T_Phi^*)) read on degrees 0..k-1, plus the norm of whatever
/// leaks into degrees >= k (zero for an exact factorization).
struct Reconstruction {
  Subspace subspace;
  double leak = 0;
};
Reconstruction reconstruct(const Factorization& f, const Tol& tol = {});

struct FactorizationReport {
  double theta_inner = 0;   // isometric-check residual of Theta
  double phi_inner = 0;
  bool theta_analytic = false;
  bool phi_analytic = false;
  double product = 0;       // max_j ||sum_m Theta(m) Phi(j - m) - delta_{jk} I||
  double gap = 0;           // reconstructed subspace vs M
  double leak = 0;
  double invariance = 0;    // reconstructed subspace under J_k

  bool ok(const Tol& tol = {}) const noexcept;
};

FactorizationReport verify_factorization(const Factorization& f, const Subspace& m, const Tol& tol = {});

// ---- the c.n.u. model ------------------------------------------------------

struct CnuSpaces {
  Eigen::Index dim_F = 0;
  Eigen::Index dim_E = 0;
  std::vector<std::pair<int, Eigen::Index>> parts;  // (k, dim E_k)
  int degree = 0;                                  // N

  /// Normalizes parts and throws BadSpec on negative dims or N < max k.
  void validate() const;
  Eigen::Index model_dim() const;
  Eigen::Index coeff_dim_model() const;  // sum of dim E_k
  Eigen::Index total_dim() const;
  Eigen::Index offset_F() const { return 0; }
  Eigen::Index offset_E() const;
  Eigen::Index offset_model() const;
  /// Offset of the block for parts[i] inside the whole space.
  Eigen::Index offset_part(std::size_t i) const;
};

Matrix cnu_operator(const CnuSpaces& s);

/// Degree bound G for W_Phi inputs: N - max(m_hi(Phi_E), 0) - 1.
int w_phi_input_degree(const Symbol& phi_e, const CnuSpaces& s);

/// W_Phi = [H_{Phi_F}^*, T_{Phi_E}^*, T_{Phi_E'}^*|_E] on the truncation, as a
/// (dim F0)(G+1) x total_dim matrix. Throws NotIsometricSymbol, NotAnalytic,
/// ShapeMismatch or MarginExceeded.
Matrix build_w_phi(const Symbol& phi_f, const Symbol& phi_e, const Symbol& phi_model, const CnuSpaces& s,
                   const Tol& tol = {});

struct SymbolInvariant {
  Subspace subspace;
  double invariance = 0;  // ||(I - P_M) T x|| over test vectors inside the margin
  int input_degree = 0;
};

/// Closed span of R(W_Phi^*) and N(T_Theta^*) (+) 0 (+) 0. An absent theta
/// contributes nothing; a zero theta contributes all of H^2_F.
SymbolInvariant invariant_from_symbols(const Symbol& phi_f, const Symbol& phi_e, const Symbol& phi_model,
                                       const std::optional<Symbol>& theta, const CnuSpaces& s,
                                       const Tol& tol = {});

/// Product of Potapov factors P^perp + z P, each inner.
Symbol potapov_product(const std::vector<Matrix>& projections);

// ---- hyperinvariant candidates ----------------------------------------------

enum class CnuForm {
  backward_full,   // {0} (+) H^2_F (+) (+) N(J_k^{n_k})
  backward_model,  // {0} (+) [v H^2_F]^perp (+) ...
  forward_full,    // u H^2_E (+) H^2_F (+) ...
};

struct Obstruction {
  char symbol = 'u';  // 'u' or 'v'
  int k = 0;
  int required_order = 0;
  int actual_order = 0;
};

struct Candidate {
  Subspace subspace;
  bool valid = false;
  std::vector<Obstruction> obstructions;
  /// Candidate restricted to E-degrees that stay inside the truncation after
  /// a sampled analytic Toeplitz of degree <= kSampleDegree.
  Subspace test;
  /// Finite-support convention: conditions imposed at present indices only.
  static constexpr const char* kConvention = "finite-support convention";
};

inline constexpr int kSampleDegree = 2;

/// u H^2_E (+) (+) N(J_k^{n_k}) with dim_F = 0; u scalar inner polynomial or zero.
Candidate hyper_candidate_pure(const Symbol& u, const Chain& chain, const CnuSpaces& s, const Tol& tol = {});

/// One of the three c.n.u. forms; `uv` is u for forward_full, v for
/// backward_model and ignored for backward_full.
Candidate hyper_candidate_cnu(CnuForm form, const Symbol& uv, const Chain& chain, const CnuSpaces& s,
                              const Tol& tol = {});

// Intertwiners of the model operator, each embedded in the whole space.

/// P_E T_Phi from H^2_E into the model blocks; Phi analytic, E -> (+) E_k.
Matrix embed_model_toeplitz(const Symbol& phi, const CnuSpaces& s);
/// H_Phi restricted to the block of parts[i], into H^2_F; Phi supported on
/// degrees -(k-1)..0.
Matrix embed_model_hankel(const Symbol& phi, std::size_t part, const CnuSpaces& s);
/// T_Psi on H^2_E (analytic Psi).
Matrix embed_forward_toeplitz(const Symbol& psi, const CnuSpaces& s);
/// T_Psi^* on H^2_F (analytic Psi).
Matrix embed_backward_toeplitz_adj(const Symbol& psi, const CnuSpaces& s);
/// H_Phi from H^2_E into H^2_F.
Matrix embed_cross_hankel(const Symbol& phi, const CnuSpaces& s);
/// Block intertwiners between model blocks with the given coefficient
/// matrices; coeffs[(a,b)] lists theta_1.. for the block from parts[b] to parts[a].
Matrix embed_model_commutant(const std::vector<std::vector<std::vector<Matrix>>>& coeffs, const CnuSpaces& s);

struct SampledForm {
  std::string name;
  int samples = 0;
  double worst_residual = 0;    // hyperinvariance residual over samples
  double worst_commutator = 0;  // ||S T x - T S x|| on the safe range
};

/// Samples every characterized intertwiner family present in the space and
/// reports per-family maxima. Runs the per-sample loop with OpenMP; the seed
/// fixes every sample independently of the thread schedule.
std::vector<SampledForm> sampled_hyperinvariance(const Candidate& c, const CnuSpaces& s, std::uint64_t seed,
                                                 int samples, bool parallel = true);

struct Witness {
  Obstruction obstruction;
  Matrix op;
  double residual = 0;     // ||(I - P_M) W P_M||
  double commutator = 0;   // ||W T x - T W x|| on the safe range
};

/// One explicit violating intertwiner per obstruction of the candidate.
std::vector<Witness> divisibility_witnesses(const Candidate& c, const CnuSpaces& s);

struct Counterexample {
  CnuSpaces spaces;
  Matrix s_prime;
  Subspace m;
  double violation = 0;
  double commutator = 0;
  Candidate repaired;
};

/// zH^2 (+) (+)_{k=1..4} N(J_k) on scalar spaces, its obstruction S' and the
/// repaired chain n_k = k - 1.
Counterexample counterexample(int degree = 8, const Tol& tol = {});

}  // namespace ppi
