#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ppi/json_io.hpp"
#include "ppi/random.hpp"

using namespace ppi;
using io::json;

TEST_CASE("matrix round trip") {
  rnd::Rng rng(1);
  const Matrix m = rnd::gaussian_matrix(rng, 3, 2);
  const json j = io::matrix_to_json(m);
  CHECK(j["rows"] == 3);
  CHECK(j["cols"] == 2);
  CHECK(j["re"][1].get<double>() == m(0, 1).real());
  CHECK((io::matrix_from_json(j).array() == m.array()).all());
  CHECK((io::matrix_from_json(json::parse(io::dump(j))).array() == m.array()).all());
}

TEST_CASE("matrix input without imaginary parts") {
  const Matrix m = io::matrix_from_json(json::parse(R"({"rows":2,"cols":2,"re":[0,0,1,0]})"));
  CHECK(m(1, 0) == cplx(1.0));
  CHECK(m(0, 1) == cplx(0.0));
}

TEST_CASE("malformed matrices") {
  auto kind_of = [](const char* text) {
    try {
      io::matrix_from_json(json::parse(text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::BadTolerance;  // sentinel: nothing thrown
  };
  CHECK(kind_of(R"({"rows":2,"cols":2,"re":[1,2,3]})") == ErrorKind::ParseError);
  CHECK(kind_of(R"({"rows":2,"re":[1,2,3,4]})") == ErrorKind::ParseError);
  CHECK(kind_of(R"({"rows":1,"cols":1,"re":["x"]})") == ErrorKind::ParseError);
  CHECK(kind_of(R"({"rows":1,"cols":1,"re":[1],"im":[1,2]})") == ErrorKind::ParseError);
  CHECK(kind_of(R"({"rows":3000,"cols":1,"re":[]})") == ErrorKind::BadSpec);
}

TEST_CASE("subspace round trip re-orthonormalizes") {
  const json j = json::parse(R"({"ambient_dim":3,"basis":{"rows":3,"cols":2,"re":[1,1, 1,0, 0,0]}})");
  const Subspace s = io::subspace_from_json(j);
  CHECK(s.rank() == 2);
  CHECK(orthonormality_defect(s) < 1e-12);
  CHECK(subspace_gap(io::subspace_from_json(io::subspace_to_json(s)), s) < 1e-12);
  CHECK_THROWS_AS(io::subspace_from_json(json::parse(R"({"ambient_dim":2,"basis":{"rows":3,"cols":1,"re":[1,0,0]}})")),
                  Error);
}

TEST_CASE("symbol round trip") {
  rnd::Rng rng(2);
  const Symbol s(2, 1, -1, {rnd::gaussian_matrix(rng, 2, 1), rnd::gaussian_matrix(rng, 2, 1)});
  const Symbol t = io::symbol_from_json(io::symbol_to_json(s));
  CHECK(t.m_lo() == -1);
  CHECK(t.dim_out() == 2);
  for (int m = -1; m <= 0; ++m) CHECK((t.coeff(m).array() == s.coeff(m).array()).all());
}

TEST_CASE("chain round trip") {
  const Chain c{{{1, 2}, {3, 1}}, {1, 2}};
  const json j = io::chain_to_json(c);
  CHECK(j["parts"] == json::parse("[[1,2],[3,1]]"));
  CHECK(j["values"] == json::parse("[1,2]"));
  const Chain d = io::chain_from_json(j);
  CHECK(d.parts == c.parts);
  CHECK(d.values == c.values);
}

TEST_CASE("decomposition json") {
  const auto d = hw_decompose(direct_sum({jk_matrix(1, 2), jk_matrix(1, 2), jk_matrix(1, 3)}));
  const json j = io::decomposition_to_json(d);
  CHECK(j["unitary_dim"] == 0);
  CHECK(j["multiplicities"]["2"] == 2);
  CHECK(j["multiplicities"]["3"] == 1);
  CHECK(j.contains("residual"));
  CHECK_FALSE(j.contains("conjugator"));
  CHECK(io::decomposition_to_json(d, true).contains("conjugator"));
}

TEST_CASE("factorization json") {
  const Subspace m = Subspace::coordinate(3, {2});
  const auto f = factor_invariant_jk(m, 1, 3);
  const json j = io::factorization_to_json(f, verify_factorization(f, m));
  CHECK(j["k"] == 3);
  CHECK(j.contains("theta"));
  CHECK(j.contains("phi"));
  CHECK(j["residuals"].contains("product"));
}

TEST_CASE("dump is deterministic") {
  const json a = json::parse(R"({"b":1,"a":[0.1,2]})");
  const json b = json::parse(R"({"a":[0.1,2],"b":1})");
  CHECK(io::dump(a) == io::dump(b));
}

TEST_CASE("read_file errors") {
  CHECK_THROWS_AS(io::read_file("/nonexistent/file.json"), Error);
}
