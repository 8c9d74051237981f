#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <map>

#include "ppi/cli.hpp"

using namespace ppi;
using cli::json;

namespace {

std::string write_temp(const std::string& name, const json& j) {
  const std::string path = "cli_report_" + name + ".json";
  std::ofstream(path) << j.dump();
  return path;
}

cli::EnvLookup env_of(std::map<std::string, std::string> vars) {
  return [vars](const char* name) -> std::optional<std::string> {
    auto it = vars.find(name);
    if (it == vars.end()) return std::nullopt;
    return it->second;
  };
}

}  // namespace

TEST_CASE("flag beats environment beats default") {
  const auto none = env_of({});
  const auto env = env_of({{"PPI_TOL_RANK", "1e-9"}, {"PPI_SEED", "7"}, {"PPI_DEGREE", "5"},
                           {"PPI_TOL_RESIDUAL", "1e-6"}, {"PPI_JSON_OUT", "out.json"}});
  const auto d = cli::resolve_options({}, none);
  CHECK(d.tol.rank_rel == 1e-10);
  CHECK(d.seed == 42);
  CHECK(d.degree == 8);
  CHECK_FALSE(d.json_out);

  const auto e = cli::resolve_options({}, env);
  CHECK(e.tol.rank_rel == 1e-9);
  CHECK(e.tol.residual_abs == 1e-6);
  CHECK(e.seed == 7);
  CHECK(e.degree == 5);
  CHECK(*e.json_out == "out.json");

  cli::FlagValues f;
  f.tol_rank = 1e-11;
  f.seed = 3;
  f.degree = 12;
  const auto fe = cli::resolve_options(f, env);
  CHECK(fe.tol.rank_rel == 1e-11);
  CHECK(fe.tol.residual_abs == 1e-6);
  CHECK(fe.seed == 3);
  CHECK(fe.degree == 12);
}

TEST_CASE("bad option values") {
  CHECK_THROWS_AS(cli::resolve_options({}, env_of({{"PPI_SEED", "abc"}})), Error);
  CHECK_THROWS_AS(cli::resolve_options({}, env_of({{"PPI_SEED", "-3"}})), Error);
  CHECK_THROWS_AS(cli::resolve_options({}, env_of({{"PPI_TOL_RANK", "1e-9x"}})), Error);
  cli::FlagValues f;
  f.tol_residual = -1.0;
  CHECK_THROWS_AS(cli::resolve_options(f, env_of({})), Error);
  cli::FlagValues g;
  g.degree = 0;
  CHECK_THROWS_AS(cli::resolve_options(g, env_of({})), Error);
}

TEST_CASE("report skeleton") {
  const json r = cli::make_report("analyze", {{"matrix_file", "x"}}, cli::Options{});
  CHECK(r["schema"] == 1);
  CHECK(r["command"] == "analyze");
  CHECK(r["seed"] == 42);
  for (const char* key : {"inputs", "verdicts", "residuals", "result"}) CHECK(r.contains(key));
  CHECK(r["inputs"]["tol"]["rank_rel"] == 1e-10);
}

TEST_CASE("analyze examples") {
  const cli::Options o;
  const auto j3 = cli::cmd_analyze(write_temp("j3", io::matrix_to_json(jk_matrix(1, 3))), o);
  CHECK(j3.exit_code == 0);
  CHECK(j3.report["result"]["is_pi"] == true);
  CHECK(j3.report["result"]["is_ppi"] == true);

  const auto z = cli::cmd_analyze(write_temp("zero", io::matrix_to_json(Matrix::Zero(3, 3))), o);
  CHECK(z.report["result"]["is_pi"] == true);
  CHECK(z.report["result"]["is_ppi"] == true);

  Matrix t = Matrix::Zero(2, 2);
  t(0, 0) = t(0, 1) = 1.0 / std::sqrt(2.0);
  const auto r1 = cli::cmd_analyze(write_temp("rank_one", io::matrix_to_json(t)), o);
  CHECK(r1.exit_code == 1);
  CHECK(r1.report["result"]["is_ppi"] == false);
  CHECK(r1.report["result"]["first_fail"] == 2);

  const auto ns = cli::cmd_analyze(write_temp("rect", io::matrix_to_json(Matrix::Zero(2, 3))), o);
  CHECK(ns.exit_code == 2);
  CHECK(ns.report["result"]["error"]["kind"] == "NotSquare");

  CHECK(cli::cmd_analyze("missing_file.json", o).exit_code == 2);
}

TEST_CASE("reports are byte-identical across runs") {
  const cli::Options o;
  const std::string f = write_temp("j4", io::matrix_to_json(jk_matrix(2, 4)));
  CHECK(io::dump(cli::cmd_decompose(f, o).report) == io::dump(cli::cmd_decompose(f, o).report));
  const auto a = cli::cmd_selftest("smoke", o);
  const auto b = cli::cmd_selftest("smoke", o);
  CHECK(io::dump(a.report) == io::dump(b.report));
  CHECK(a.exit_code == 0);
}

TEST_CASE("decompose") {
  const cli::Options o;
  const auto d = cli::cmd_decompose(write_temp("dec", io::matrix_to_json(jk_matrix(1, 3))), o);
  CHECK(d.exit_code == 0);
  CHECK(d.report["result"]["multiplicities"]["3"] == 1);
  Matrix t = Matrix::Zero(2, 2);
  t(0, 0) = t(0, 1) = 1.0 / std::sqrt(2.0);
  const auto bad = cli::cmd_decompose(write_temp("dec_bad", io::matrix_to_json(t)), o);
  CHECK(bad.exit_code == 1);
  CHECK(bad.report["result"]["error"]["kind"] == "NotPPI");
}

TEST_CASE("check-subspace examples") {
  const cli::Options o;
  const std::string j3 = write_temp("cs_j3", io::matrix_to_json(jk_matrix(1, 3)));
  const auto n2 = cli::cmd_check_subspace(j3, write_temp("n2", io::subspace_to_json(Subspace::coordinate(3, {1, 2}))),
                                          "hyperinvariant", o);
  CHECK(n2.exit_code == 0);
  CHECK(n2.report["verdicts"]["hyperinvariant"] == true);
  const auto full =
      cli::cmd_check_subspace(j3, write_temp("full", io::subspace_to_json(Subspace::full(3))), "hyperinvariant", o);
  CHECK(full.report["result"]["flag"] == true);
  const std::string e1 = write_temp("e1", io::subspace_to_json(Subspace::coordinate(3, {0})));
  const auto line = cli::cmd_check_subspace(j3, e1, "invariant", o);
  CHECK(line.exit_code == 1);
  CHECK(line.report["result"]["flag"] == false);
  CHECK(line.report["residuals"]["invariance"].get<double>() == doctest::Approx(1.0));
  const auto hyp = cli::cmd_check_subspace(j3, e1, "hyperinvariant", o);
  CHECK(hyp.report["result"]["witness"].is_object());
  const auto mism =
      cli::cmd_check_subspace(j3, write_temp("c2", io::subspace_to_json(Subspace::full(2))), "invariant", o);
  CHECK(mism.exit_code == 2);
  CHECK(mism.report["result"]["error"]["kind"] == "DimMismatch");
  CHECK(cli::cmd_check_subspace(j3, e1, "sideways", o).exit_code == 2);
}

TEST_CASE("factorize examples") {
  const cli::Options o;
  const auto f = cli::cmd_factorize(write_temp("fz", io::subspace_to_json(Subspace::coordinate(3, {2}))), 1, 3, o);
  CHECK(f.exit_code == 0);
  CHECK(f.report["verdicts"]["reconstructs"] == true);
  CHECK(f.report["result"]["k"] == 3);
  const auto bad = cli::cmd_factorize(write_temp("fz_bad", io::subspace_to_json(Subspace::coordinate(3, {0}))), 1, 3, o);
  CHECK(bad.exit_code == 1);
  CHECK(bad.report["result"]["error"]["kind"] == "NotInvariant");
}

TEST_CASE("lattice") {
  const cli::Options o;
  const auto l = cli::cmd_lattice("1:1,2:1", o);
  CHECK(l.exit_code == 0);
  CHECK(l.report["result"]["count"] == 4);
  CHECK(l.report["result"]["convention"] == "finite-support convention");
  const auto single = cli::cmd_lattice("3:2", o);
  CHECK(single.report["result"]["count"] == 4);
  CHECK(single.report["result"]["chains"][3]["dim"] == 6);
  CHECK(cli::cmd_lattice("3-2", o).exit_code == 2);
  CHECK(cli::cmd_lattice("0:1", o).exit_code == 2);
  CHECK(cli::parse_parts("3:1,1:2,3:1") == std::vector<std::pair<int, Eigen::Index>>{{1, 2}, {3, 2}});
}

TEST_CASE("selftest scale errors") {
  const auto r = cli::cmd_selftest("huge", cli::Options{});
  CHECK(r.exit_code == 2);
}

TEST_CASE("exit codes by error kind") {
  CHECK(cli::exit_code_for(ErrorKind::ParseError) == 2);
  CHECK(cli::exit_code_for(ErrorKind::BadSpec) == 2);
  CHECK(cli::exit_code_for(ErrorKind::NotPPI) == 1);
  CHECK(cli::exit_code_for(ErrorKind::NotInvariant) == 1);
}
