#include "ppi/json_io.hpp"

#include <fstream>
#include <sstream>

namespace ppi::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Eigen::Index count_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) parse_fail(std::string("\"") + key + "\" must be a count");
  return static_cast<Eigen::Index>(v.get<long long>());
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

Matrix matrix_from_json(const json& j) {
  const Eigen::Index rows = count_field(j, "rows");
  const Eigen::Index cols = count_field(j, "cols");
  if (rows > kMaxDim || cols > kMaxDim)
    throw Error(ErrorKind::BadSpec, "matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
                                        "; inputs are limited to " + std::to_string(kMaxDim) + " per side");
  const json& re = field(j, "re");
  if (!re.is_array() || static_cast<Eigen::Index>(re.size()) != rows * cols)
    parse_fail("\"re\" must hold rows*cols numbers");
  const bool has_im = j.contains("im");
  if (has_im && (!j.at("im").is_array() || j.at("im").size() != re.size()))
    parse_fail("\"im\" must match \"re\" in length");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto idx = static_cast<std::size_t>(i * cols + c);
      if (!re[idx].is_number() || (has_im && !j.at("im")[idx].is_number())) parse_fail("non-numeric entry");
      m(i, c) = cplx(re[idx].get<double>(), has_im ? j.at("im")[idx].get<double>() : 0.0);
    }
  require_finite(m, "matrix");
  return m;
}

json subspace_to_json(const Subspace& s) {
  return {{"ambient_dim", s.ambient_dim()}, {"basis", matrix_to_json(s.basis())}};
}

Subspace subspace_from_json(const json& j) {
  const Eigen::Index d = count_field(j, "ambient_dim");
  const Matrix b = matrix_from_json(field(j, "basis"));
  if (b.rows() != d) throw Error(ErrorKind::DimMismatch, "basis rows differ from ambient_dim");
  if (b.cols() == 0) return Subspace::zero(d);
  return orthonormal_range(b, {}, Cutoff::unit);
}

json symbol_to_json(const Symbol& s) {
  json cs = json::array();
  for (const auto& c : s.coeffs()) cs.push_back(matrix_to_json(c));
  return {{"dim_out", s.dim_out()}, {"dim_in", s.dim_in()}, {"m_lo", s.m_lo()}, {"coeffs", cs}};
}

Symbol symbol_from_json(const json& j) {
  const Eigen::Index out = count_field(j, "dim_out");
  const Eigen::Index in = count_field(j, "dim_in");
  const json& lo = field(j, "m_lo");
  if (!lo.is_number_integer()) parse_fail("\"m_lo\" must be an integer");
  const json& cs = field(j, "coeffs");
  if (!cs.is_array()) parse_fail("\"coeffs\" must be an array");
  std::vector<Matrix> coeffs;
  for (const auto& c : cs) coeffs.push_back(matrix_from_json(c));
  return Symbol(out, in, lo.get<int>(), std::move(coeffs));
}

json decomposition_to_json(const Decomposition& d, bool with_conjugator) {
  json mult = json::object();
  for (const auto& [k, m] : d.multiplicities) mult[std::to_string(k)] = m;
  json j = {{"unitary_dim", d.unitary_dim},
            {"unilateral_shift_dim", d.unilateral_shift_dim},
            {"backward_shift_dim", d.backward_shift_dim},
            {"multiplicities", mult},
            {"residual", d.residual},
            {"unitarity_defect", d.unitarity_defect}};
  if (with_conjugator) j["conjugator"] = matrix_to_json(d.conjugator);
  return j;
}

json chain_to_json(const Chain& c) {
  json parts = json::array();
  for (const auto& [k, m] : c.parts) parts.push_back({k, m});
  return {{"parts", parts}, {"values", c.values}};
}

Chain chain_from_json(const json& j) {
  const json& parts = field(j, "parts");
  const json& values = field(j, "values");
  if (!parts.is_array() || !values.is_array()) parse_fail("chain fields must be arrays");
  Chain c;
  for (const auto& p : parts) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      parse_fail("each part must be [k, m_k]");
    c.parts.emplace_back(p[0].get<int>(), p[1].get<Eigen::Index>());
  }
  for (const auto& v : values) {
    if (!v.is_number_integer()) parse_fail("chain values must be integers");
    c.values.push_back(v.get<int>());
  }
  return c;
}

json factorization_to_json(const Factorization& f, const FactorizationReport& rep) {
  return {{"k", f.k},
          {"theta", symbol_to_json(f.theta)},
          {"phi", symbol_to_json(f.phi)},
          {"residuals",
           {{"theta_inner", rep.theta_inner},
            {"phi_inner", rep.phi_inner},
            {"product", rep.product},
            {"gap", rep.gap},
            {"leak", rep.leak},
            {"invariance", rep.invariance}}}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    parse_fail(path + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace ppi::io
