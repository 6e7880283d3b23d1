#pragma once
#include "aztec/rational.hpp"

namespace aztec {

// Model parameters of the exact engine: diagonal-step weight gamma and the
// per-triangle area weight q. Both rational; q must be nonzero.
struct Weights {
  Rational gamma;
  Rational q;
};

// The q-product formulas degenerate exactly when q^2 = 1; for rational q that
// means q = 1 or q = -1 (no other rational roots of unity exist).
inline bool q_squared_is_one(const Rational& q) { return q == 1 || q == -1; }

}  // namespace aztec
