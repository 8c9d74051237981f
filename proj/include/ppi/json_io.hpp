#pragma once

// JSON formats for matrices, subspaces, symbols, decompositions, chains and
// factorizations. Complex entries are split into "re" and "im" arrays in
// row-major order.

#include <string>

#include <json.hpp>

#include "ppi/beurling.hpp"
#include "ppi/lattice.hpp"
#include "ppi/pisom.hpp"

namespace ppi::io {

using nlohmann::json;

/// Matrices above this many rows or columns are rejected on input.
inline constexpr Eigen::Index kMaxDim = 2000;

json matrix_to_json(const Matrix& m);
/// Throws ParseError on malformed input and BadSpec when over kMaxDim.
Matrix matrix_from_json(const json& j);

json subspace_to_json(const Subspace& s);
/// Accepts {"ambient_dim", "basis"}; the basis is re-orthonormalized when it
/// is merely a spanning set.
Subspace subspace_from_json(const json& j);

json symbol_to_json(const Symbol& s);
Symbol symbol_from_json(const json& j);

json decomposition_to_json(const Decomposition& d, bool with_conjugator = false);
json chain_to_json(const Chain& c);
Chain chain_from_json(const json& j);
json factorization_to_json(const Factorization& f, const FactorizationReport& rep);

/// Reads a whole file; ParseError if unreadable or not JSON.
json read_file(const std::string& path);

/// Deterministic dump: sorted keys, fixed indentation, doubles at full
/// round-trip precision.
std::string dump(const json& j);

}  // namespace ppi::io
