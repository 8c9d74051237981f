#pragma once

// Hot loops with a serial reference and an OpenMP variant. The two must agree
// bitwise on the per-element results; only the scheduling differs.

#include <vector>

#include "ppi/numkit.hpp"

namespace ppi::kernels {

/// ||(I - B B^*) S B|| for each S in ops, where B has orthonormal columns.
std::vector<double> invariance_residuals_serial(const Matrix& basis, const std::vector<Matrix>& ops);
std::vector<double> invariance_residuals_parallel(const Matrix& basis, const std::vector<Matrix>& ops);

/// Matrix of S -> S T1 - T2 S acting on column-major vec(S).
Matrix sylvester_system_serial(const Matrix& t1, const Matrix& t2);
Matrix sylvester_system_parallel(const Matrix& t1, const Matrix& t2);

/// Whether the parallel variants are compiled with OpenMP.
bool openmp_enabled() noexcept;
int max_threads() noexcept;

}  // namespace ppi::kernels
