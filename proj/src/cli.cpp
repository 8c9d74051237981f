#include "ppi/cli.hpp"

#include <cstdlib>
#include <sstream>

#include "ppi/acceptance.hpp"

namespace ppi::cli {

namespace {

[[noreturn]] void bad_env(const char* name, const std::string& value) {
  throw Error(ErrorKind::BadSpec, std::string("environment variable ") + name + "=\"" + value + "\" is not valid");
}

template <class T, class Parse>
std::optional<T> env_value(const EnvLookup& env, const char* name, Parse parse) {
  const auto raw = env(name);
  if (!raw) return std::nullopt;
  std::size_t used = 0;
  T v{};
  try {
    v = parse(*raw, &used);
  } catch (const std::exception&) {
    bad_env(name, *raw);
  }
  if (used != raw->size()) bad_env(name, *raw);
  return v;
}

json tol_json(const Tol& t) { return {{"rank_rel", t.rank_rel}, {"residual_abs", t.residual_abs}}; }

Matrix read_matrix(const std::string& path) { return io::matrix_from_json(io::read_file(path)); }

}  // namespace

std::optional<std::string> process_env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr) return std::nullopt;
  return std::string(v);
}

Options resolve_options(const FlagValues& flags, const EnvLookup& env) {
  Options o;
  const auto stod = [](const std::string& s, std::size_t* n) { return std::stod(s, n); };
  const auto stou = [](const std::string& s, std::size_t* n) {
    if (!s.empty() && s[0] == '-') throw std::invalid_argument("negative");
    return static_cast<std::uint64_t>(std::stoull(s, n));
  };
  const auto stoi = [](const std::string& s, std::size_t* n) { return std::stoi(s, n); };

  if (auto v = flags.tol_rank ? flags.tol_rank : env_value<double>(env, "PPI_TOL_RANK", stod)) o.tol.rank_rel = *v;
  if (auto v = flags.tol_residual ? flags.tol_residual : env_value<double>(env, "PPI_TOL_RESIDUAL", stod))
    o.tol.residual_abs = *v;
  if (auto v = flags.seed ? flags.seed : env_value<std::uint64_t>(env, "PPI_SEED", stou)) o.seed = *v;
  if (auto v = flags.degree ? flags.degree : env_value<int>(env, "PPI_DEGREE", stoi)) o.degree = *v;
  o.json_out = flags.json_out ? flags.json_out : env("PPI_JSON_OUT");
  o.tol.validate();
  if (o.degree < 1) throw Error(ErrorKind::BadSpec, "degree must be at least 1");
  return o;
}

json make_report(const std::string& command, const json& inputs, const Options& opts) {
  json in = inputs;
  in["tol"] = tol_json(opts.tol);
  in["degree"] = opts.degree;
  return {{"schema", kSchema},
          {"command", command},
          {"inputs", in},
          {"verdicts", json::object()},
          {"residuals", json::object()},
          {"seed", opts.seed},
          {"result", json::object()}};
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::BadSpec:
    case ErrorKind::BadTolerance:
    case ErrorKind::NotSquare:
    case ErrorKind::DimMismatch:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::NonFinite:
    case ErrorKind::BadDegree:
      return kUsage;
    default:
      return kCheckFailed;
  }
}

Outcome guarded(const std::string& command, const json& inputs, const Options& opts,
                const std::function<Outcome()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    json r = make_report(command, inputs, opts);
    r["result"]["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    return {r, exit_code_for(e.kind())};
  }
}

Outcome cmd_analyze(const std::string& matrix_file, const Options& opts) {
  const json inputs = {{"matrix_file", matrix_file}};
  return guarded("analyze", inputs, opts, [&] {
    const Matrix t = read_matrix(matrix_file);
    require_square(t, "T");
    json r = make_report("analyze", inputs, opts);
    r["inputs"]["dim"] = t.rows();
    const auto pi = is_partial_isometry(t, opts.tol);
    const auto pw = is_power_partial_isometry(t, opts.tol);
    for (std::size_t i = 0; i < PartialIsometryReport::kCriteria; ++i) {
      const std::string name(PartialIsometryReport::kNames[i]);
      r["residuals"][name] = pi.residuals[i];
      r["verdicts"][name] = static_cast<bool>(pi.verdicts[i]);
    }
    r["verdicts"]["is_pi"] = pi.is_pi;
    r["verdicts"]["is_ppi"] = pw.is_ppi;
    r["verdicts"]["criteria_agree"] = pi.agree();
    r["result"] = {{"is_pi", pi.is_pi}, {"is_ppi", pw.is_ppi}};
    r["result"]["first_fail"] = pw.first_failing_power ? json(*pw.first_failing_power) : json(nullptr);
    return Outcome{r, pw.is_ppi ? kPass : kCheckFailed};
  });
}

Outcome cmd_decompose(const std::string& matrix_file, const Options& opts) {
  const json inputs = {{"matrix_file", matrix_file}};
  return guarded("decompose", inputs, opts, [&] {
    const Matrix t = read_matrix(matrix_file);
    require_square(t, "T");
    json r = make_report("decompose", inputs, opts);
    r["inputs"]["dim"] = t.rows();
    const auto d = hw_decompose(t, opts.tol);
    r["verdicts"]["is_ppi"] = true;
    r["verdicts"]["reassembles"] = d.residual <= opts.tol.residual_abs;
    r["residuals"]["conjugation"] = d.residual;
    r["residuals"]["unitarity_defect"] = d.unitarity_defect;
    r["result"] = io::decomposition_to_json(d, true);
    return Outcome{r, d.residual <= opts.tol.residual_abs ? kPass : kCheckFailed};
  });
}

Outcome cmd_check_subspace(const std::string& matrix_file, const std::string& subspace_file,
                           const std::string& mode, const Options& opts) {
  const json inputs = {{"matrix_file", matrix_file}, {"subspace_file", subspace_file}, {"mode", mode}};
  return guarded("check-subspace", inputs, opts, [&] {
    if (mode != "invariant" && mode != "reducing" && mode != "hyperinvariant")
      throw Error(ErrorKind::BadSpec, "mode must be invariant, reducing or hyperinvariant");
    const Matrix t = read_matrix(matrix_file);
    require_square(t, "T");
    const Subspace m = io::subspace_from_json(io::read_file(subspace_file));
    if (m.ambient_dim() != t.rows())
      throw Error(ErrorKind::DimMismatch, "subspace lives in C^" + std::to_string(m.ambient_dim()) +
                                              ", operator acts on C^" + std::to_string(t.rows()));
    json r = make_report("check-subspace", inputs, opts);
    r["inputs"]["dim"] = t.rows();
    r["inputs"]["subspace_rank"] = m.rank();
    bool flag = false;
    if (mode == "invariant") {
      const auto res = is_invariant(m, t, opts.tol);
      flag = res.flag;
      r["residuals"]["invariance"] = res.residual;
    } else if (mode == "reducing") {
      const auto a = is_invariant(m, t, opts.tol);
      const auto b = is_invariant(m, adj(t), opts.tol);
      flag = a.flag && b.flag;
      r["residuals"]["invariance"] = a.residual;
      r["residuals"]["adjoint_invariance"] = b.residual;
    } else {
      const auto h = is_hyperinvariant(m, t, opts.tol);
      flag = h.flag;
      r["residuals"]["worst_commutant"] = h.worst_residual;
      r["result"]["witness"] = h.witness ? io::matrix_to_json(*h.witness) : json(nullptr);
    }
    r["verdicts"][mode] = flag;
    r["result"]["flag"] = flag;
    return Outcome{r, flag ? kPass : kCheckFailed};
  });
}

Outcome cmd_factorize(const std::string& subspace_file, Eigen::Index coeff_dim, int k, const Options& opts) {
  const json inputs = {{"subspace_file", subspace_file}, {"coeff_dim", coeff_dim}, {"k", k}};
  return guarded("factorize", inputs, opts, [&] {
    if (coeff_dim < 1 || k < 1) throw Error(ErrorKind::BadSpec, "coeff_dim and k must be at least 1");
    const Subspace m = io::subspace_from_json(io::read_file(subspace_file));
    if (m.ambient_dim() != coeff_dim * k)
      throw Error(ErrorKind::DimMismatch, "subspace lives in C^" + std::to_string(m.ambient_dim()) +
                                              ", expected coeff_dim * k = " + std::to_string(coeff_dim * k));
    json r = make_report("factorize", inputs, opts);
    const auto f = factor_invariant_jk(m, coeff_dim, k, opts.tol);
    const auto rep = verify_factorization(f, m, opts.tol);
    const bool ok = rep.ok(opts.tol);
    r["verdicts"] = {{"theta_inner", rep.theta_analytic && rep.theta_inner <= opts.tol.residual_abs},
                     {"phi_inner", rep.phi_analytic && rep.phi_inner <= opts.tol.residual_abs},
                     {"reconstructs", ok}};
    r["residuals"] = {{"theta_inner", rep.theta_inner}, {"phi_inner", rep.phi_inner}, {"product", rep.product},
                      {"gap", rep.gap}, {"leak", rep.leak}, {"invariance", rep.invariance}};
    r["result"] = io::factorization_to_json(f, rep);
    return Outcome{r, ok ? kPass : kCheckFailed};
  });
}

std::vector<std::pair<int, Eigen::Index>> parse_parts(const std::string& spec) {
  std::vector<std::pair<int, Eigen::Index>> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    std::size_t a = 0, b = 0;
    try {
      if (colon == std::string::npos) throw std::invalid_argument("no colon");
      const std::string ks = item.substr(0, colon), ms = item.substr(colon + 1);
      const int k = std::stoi(ks, &a);
      const long m = std::stol(ms, &b);
      if (a != ks.size() || b != ms.size() || ks.empty() || ms.empty()) throw std::invalid_argument("trailing");
      parts.emplace_back(k, static_cast<Eigen::Index>(m));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::BadSpec, "part \"" + item + "\" is not of the form k:m");
    }
  }
  if (parts.empty()) throw Error(ErrorKind::BadSpec, "no parts given");
  return normalize_parts(parts);
}

Outcome cmd_lattice(const std::string& parts_spec, const Options& opts) {
  const json inputs = {{"parts", parts_spec}};
  return guarded("lattice", inputs, opts, [&] {
    const auto parts = parse_parts(parts_spec);
    json r = make_report("lattice", inputs, opts);
    json pj = json::array();
    for (const auto& [k, m] : parts) pj.push_back({k, m});
    r["inputs"]["parsed_parts"] = pj;
    json chains = json::array();
    for (const auto& c : enumerate_admissible_chains(parts)) {
      json cj = io::chain_to_json(c);
      Eigen::Index dim = 0;
      for (std::size_t i = 0; i < c.parts.size(); ++i) dim += c.values[i] * c.parts[i].second;
      cj["dim"] = dim;
      chains.push_back(cj);
    }
    r["verdicts"]["enumerated"] = true;
    r["result"] = {{"count", chains.size()},
                   {"ambient_dim", chain_ambient_dim(parts)},
                   {"convention", Candidate::kConvention},
                   {"chains", chains}};
    return Outcome{r, kPass};
  });
}

Outcome cmd_selftest(const std::string& scale, const Options& opts) {
  const json inputs = {{"scale", scale}};
  return guarded("selftest", inputs, opts, [&] {
    acceptance::Config cfg;
    cfg.scale = acceptance::parse_scale(scale);
    cfg.seed = opts.seed;
    cfg.tol = opts.tol;
    json r = make_report("selftest", inputs, opts);
    json list = json::array();
    bool all = true;
    for (const auto& c : acceptance::run_all(cfg)) {
      all = all && c.pass;
      const std::string key = "criterion_" + std::to_string(c.id);
      r["verdicts"][key] = c.pass;
      for (const auto& [name, v] : c.metrics) r["residuals"][key + "." + name] = v;
      list.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    r["verdicts"]["all"] = all;
    r["result"] = {{"criteria", list}};
    return Outcome{r, all ? kPass : kCheckFailed};
  });
}

}  // namespace ppi::cli
