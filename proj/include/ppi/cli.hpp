#pragma once

// Command implementations behind the `ppi` executable. Each command returns
// its report and the exit code; the executable only parses arguments.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "ppi/json_io.hpp"

namespace ppi::cli {

using io::json;

inline constexpr int kSchema = 1;

enum Exit : int { kPass = 0, kCheckFailed = 1, kUsage = 2 };

struct Options {
  Tol tol{};
  std::uint64_t seed = 42;
  int degree = 8;
  std::optional<std::string> json_out;
};

/// Values given on the command line; unset entries fall back to the
/// environment (PPI_TOL_RANK, PPI_TOL_RESIDUAL, PPI_SEED, PPI_DEGREE,
/// PPI_JSON_OUT) and then to the defaults.
struct FlagValues {
  std::optional<double> tol_rank;
  std::optional<double> tol_residual;
  std::optional<std::uint64_t> seed;
  std::optional<int> degree;
  std::optional<std::string> json_out;
};

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

/// Process environment lookup.
std::optional<std::string> process_env(const char* name);

/// Throws BadSpec on unparsable environment values, BadTolerance on bad
/// tolerances and BadSpec on degree < 1.
Options resolve_options(const FlagValues& flags, const EnvLookup& env = process_env);

struct Outcome {
  json report;
  int exit_code = kPass;
};

/// Fresh report skeleton: schema, command, inputs, empty verdicts/residuals,
/// seed and result.
json make_report(const std::string& command, const json& inputs, const Options& opts);

Outcome cmd_analyze(const std::string& matrix_file, const Options& opts);
Outcome cmd_decompose(const std::string& matrix_file, const Options& opts);
Outcome cmd_check_subspace(const std::string& matrix_file, const std::string& subspace_file,
                           const std::string& mode, const Options& opts);
Outcome cmd_factorize(const std::string& subspace_file, Eigen::Index coeff_dim, int k, const Options& opts);
Outcome cmd_lattice(const std::string& parts_spec, const Options& opts);
Outcome cmd_selftest(const std::string& scale, const Options& opts);

/// "1:2,3:1" -> {(1, 2), (3, 1)}; throws BadSpec.
std::vector<std::pair<int, Eigen::Index>> parse_parts(const std::string& spec);

/// Exit code for a library error: input problems are usage errors, anything
/// else is a failed mathematical check.
int exit_code_for(ErrorKind kind) noexcept;

/// Runs `body`, turning library errors into an error report with the right
/// exit code.
Outcome guarded(const std::string& command, const json& inputs, const Options& opts,
                const std::function<Outcome()>& body);

}  // namespace ppi::cli
