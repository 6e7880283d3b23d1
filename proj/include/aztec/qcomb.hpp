#pragma once
#include <vector>

#include "aztec/rational.hpp"
#include "aztec/weights.hpp"

namespace aztec {

// q^2-trinomial coefficient [a+b+c; a,b,c]: the ratio
//   prod_{s=1}^{a+b+c}(q^{2s}-1) / (prod^a ... prod^b ... prod^c ...).
// Degenerates to the multinomial (a+b+c)!/(a!b!c!) at q^2 = 1.
Rational q_trinomial(long a, long b, long c, const Rational& q);

// Partition function of one weighted Schroder path (i,0) -> (0,j):
//   sum_{k=0}^{min(i,j)} gamma^k q^{k^2} [i+j-k; j-k, k, i-k].
Rational single_path_Z(long i, long j, const Weights& w);

// Dense polynomial with rational coefficients; coeff[k] multiplies t^k.
struct Poly {
  std::vector<Rational> coeff;
  Rational eval(const Rational& t) const;
  long degree() const;  // index of the last nonzero coefficient; -1 for the zero poly
};

// z_j(t): the unique degree-j polynomial with z_j(q^{2i}) = single_path_Z(i,j)
// for every i >= 0. Its coefficients have no q^2 -> 1 limit, so q = +-1 is
// rejected; callers needing values at t = q^{2i} should use single_path_Z.
Poly z_poly(long j, const Weights& w);

// Depth-first enumeration of all Schroder paths (i,0) -> (0,j) accumulating
// gamma^{k(p)} q^{A(p)}; the oracle for single_path_Z. Guarded at i + j <= 24.
Rational brute_force_Z(int i, int j, const Weights& w);

}  // namespace aztec
