// ppi: analyze power partial isometries and their invariant subspaces.
//
// Exit codes: 0 pass, 1 a mathematical check failed, 2 usage or parse error.
// Each of --tol-rank, --tol-residual, --seed, --degree and --json-out falls
// back to PPI_TOL_RANK, PPI_TOL_RESIDUAL, PPI_SEED, PPI_DEGREE and
// PPI_JSON_OUT; a flag on the command line wins over the environment.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ppi/cli.hpp"

namespace {

using ppi::cli::Outcome;

template <class T>
void optional_flag(CLI::App& app, const std::string& name, std::optional<T>& slot, const std::string& help) {
  app.add_option_function<T>(name, [&slot](const T& v) { slot = v; }, help);
}

int emit(const Outcome& out, const ppi::cli::Options& opts) {
  const std::string text = ppi::io::dump(out.report);
  std::cout << text << "\n";
  if (opts.json_out) {
    std::ofstream f(*opts.json_out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << *opts.json_out << "\n";
      return ppi::cli::kUsage;
    }
    f << text << "\n";
  }
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"power partial isometry toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  ppi::cli::FlagValues flags;
  optional_flag(app, "--tol-rank", flags.tol_rank, "relative rank cutoff");
  optional_flag(app, "--tol-residual", flags.tol_residual, "absolute residual tolerance");
  optional_flag(app, "--seed", flags.seed, "random seed");
  optional_flag(app, "--degree", flags.degree, "Hardy truncation degree N");
  optional_flag(app, "--json-out", flags.json_out, "also write the report here");

  std::string matrix_file, subspace_file, mode = "invariant", parts, scale = "smoke";
  Eigen::Index coeff_dim = 1;
  int k = 1;

  auto* analyze = app.add_subcommand("analyze", "partial isometry and power checks");
  analyze->add_option("matrix", matrix_file, "matrix JSON")->required();

  auto* decompose = app.add_subcommand("decompose", "unitary part and truncated shift multiplicities");
  decompose->add_option("matrix", matrix_file, "matrix JSON")->required();

  auto* check = app.add_subcommand("check-subspace", "invariance, reduction or hyperinvariance of a subspace");
  check->add_option("matrix", matrix_file, "matrix JSON")->required();
  check->add_option("subspace", subspace_file, "subspace JSON")->required();
  check->add_option("--mode", mode, "invariant, reducing or hyperinvariant")
      ->check(CLI::IsMember({"invariant", "reducing", "hyperinvariant"}));

  auto* factorize = app.add_subcommand("factorize", "inner factorization of a J_k-invariant subspace");
  factorize->add_option("subspace", subspace_file, "subspace JSON")->required();
  factorize->add_option("--coeff-dim", coeff_dim, "dimension of the coefficient space")->required();
  factorize->add_option("--k", k, "index of the truncated shift")->required();

  auto* lattice = app.add_subcommand("lattice", "admissible chains for a sum of truncated shifts");
  lattice->add_option("--parts", parts, "k:m pairs, e.g. 1:2,3:1")->required();

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--scale", scale, "smoke or desk");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ppi::cli::kUsage;
  }

  ppi::cli::Options opts;
  try {
    opts = ppi::cli::resolve_options(flags);
  } catch (const ppi::Error& e) {
    std::cerr << e.what() << "\n";
    return ppi::cli::kUsage;
  }

  Outcome out;
  if (*analyze) out = ppi::cli::cmd_analyze(matrix_file, opts);
  else if (*decompose) out = ppi::cli::cmd_decompose(matrix_file, opts);
  else if (*check) out = ppi::cli::cmd_check_subspace(matrix_file, subspace_file, mode, opts);
  else if (*factorize) out = ppi::cli::cmd_factorize(subspace_file, coeff_dim, k, opts);
  else if (*lattice) out = ppi::cli::cmd_lattice(parts, opts);
  else out = ppi::cli::cmd_selftest(scale, opts);
  return emit(out, opts);
}
