#pragma once
// Exact partition functions of non-intersecting Schroder path families via
// the Lindstrom-Gessel-Viennot determinant, the explicit LU factorization,
// and the top-path one-point function.
#include <vector>

#include "aztec/qcomb.hpp"

namespace aztec {

// Start columns a_0 < a_1 < ... < a_n with a_0 = 0 and a_n = m; path i runs
// from (a_i, 0) to (0, i). The m - n columns of [0, m] missing from `starts`
// are the boundary defects.
struct StartConfig {
  int n = 0;
  int m = 0;
  std::vector<int> starts;  // size n + 1
};

void validate_config(const StartConfig& cfg);  // throws std::invalid_argument
StartConfig config_from_starts(std::vector<int> starts);
StartConfig config_from_defects(int n, int m, const std::vector<int>& defects);
std::vector<int> config_defects(const StartConfig& cfg);
StartConfig aztec_diamond_config(int n);  // a_i = i, no defects

using ExactMatrix = std::vector<std::vector<Rational>>;

// A[i][j] = single_path_Z(a_i, j). The OpenMP build and the serial reference
// must agree entry for entry.
ExactMatrix build_gv_matrix(const StartConfig& cfg, const Weights& w);
ExactMatrix build_gv_matrix_serial(const StartConfig& cfg, const Weights& w);

// Rational Gaussian elimination, pivoting on the first nonzero entry.
Rational det(ExactMatrix a);
ExactMatrix mat_mul(const ExactMatrix& a, const ExactMatrix& b);

Rational partition_det(const StartConfig& cfg, const Weights& w);

// Closed form: q^{n(n+1)(2n+1)/6} prod_{s<n}(gamma + q^{2s+1})^{n-s} times the
// ratio of Vandermonde determinants in q^{2a_i} over q^{2i}. The q = 1 limit
// path evaluates the ratio as prod_{i>j}(a_i - a_j)/(i - j); q = -1 is rejected.
Rational partition_product(const StartConfig& cfg, const Weights& w);

// Explicit inverse of the unit-lower-triangular factor L of A = LU; requires
// the q^{2a_i} to be pairwise distinct (q not 0 or +-1).
ExactMatrix lu_inverse_L(const StartConfig& cfg, const Weights& w);

// Last diagonal entry U[n][n] of the upper factor, in product form.
Rational u_diag_last(const StartConfig& cfg, const Weights& w);

// One-point function H^(ell): relative weight of configurations whose top
// path passes through (ell, n), from the finite residue sum. ell = 0 gives 1,
// ell > m gives 0.
Rational one_point_H(const StartConfig& cfg, int ell, const Weights& w);

// Weight of single-path continuations (ell,0) -> (0,r) whose first step is Up
// or Diag: q^{2l} Z(l, r-1) + gamma q^{2l-1} Z(l-1, r-1); escape_Y(0, r) = 1.
Rational escape_Y(int ell, int r, const Weights& w);

}  // namespace aztec
