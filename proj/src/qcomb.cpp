#include "aztec/qcomb.hpp"

#include <stdexcept>

namespace aztec {

namespace {

// prefix[k] = prod_{s=1}^{k} (q^{2s} - 1); requires q^2 != 1 (and q != 0),
// which for rational q also rules out every other root of unity.
std::vector<Rational> factor_prefix(long len, const Rational& q) {
  std::vector<Rational> pre(static_cast<size_t>(len) + 1);
  pre[0] = 1;
  const Rational q2 = q * q;
  Rational pw = 1;
  for (long s = 1; s <= len; ++s) {
    pw *= q2;
    const Rational f = pw - 1;
    if (f == 0) throw std::domain_error("q^2-product factor vanishes (degenerate q)");
    pre[static_cast<size_t>(s)] = pre[static_cast<size_t>(s) - 1] * f;
  }
  return pre;
}

Rational multinomial(long a, long b, long c) {
  Rational r(factorial(static_cast<unsigned long>(a + b + c)),
             factorial(static_cast<unsigned long>(a)) * factorial(static_cast<unsigned long>(b)) *
                 factorial(static_cast<unsigned long>(c)));
  r.canonicalize();
  return r;
}

}  // namespace

Rational q_trinomial(long a, long b, long c, const Rational& q) {
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("q_trinomial: negative index");
  if (q == 0) throw std::invalid_argument("q_trinomial: q must be nonzero");
  if (q_squared_is_one(q)) return multinomial(a, b, c);
  const auto pre = factor_prefix(a + b + c, q);
  return pre[static_cast<size_t>(a + b + c)] /
         (pre[static_cast<size_t>(a)] * pre[static_cast<size_t>(b)] * pre[static_cast<size_t>(c)]);
}

Rational single_path_Z(long i, long j, const Weights& w) {
  if (i < 0 || j < 0) throw std::invalid_argument("single_path_Z: negative endpoint");
  if (w.q == 0) throw std::invalid_argument("single_path_Z: q must be nonzero");
  const long kmax = std::min(i, j);
  Rational acc = 0;
  if (q_squared_is_one(w.q)) {
    for (long k = 0; k <= kmax; ++k)
      acc += pow_rational(w.gamma, k) * pow_rational(w.q, k * k) * multinomial(j - k, k, i - k);
    return acc;
  }
  const auto pre = factor_prefix(i + j, w.q);
  Rational g = 1;              // gamma^k q^{k^2}
  Rational qodd = w.q;         // q^{2k+1}
  const Rational q2 = w.q * w.q;
  for (long k = 0; k <= kmax; ++k) {
    acc += g * pre[static_cast<size_t>(i + j - k)] /
           (pre[static_cast<size_t>(j - k)] * pre[static_cast<size_t>(k)] * pre[static_cast<size_t>(i - k)]);
    g *= w.gamma * qodd;
    qodd *= q2;
  }
  return acc;
}

Rational Poly::eval(const Rational& t) const {
  Rational acc = 0;
  for (size_t d = coeff.size(); d-- > 0;) acc = acc * t + coeff[d];
  return acc;
}

long Poly::degree() const {
  for (size_t d = coeff.size(); d-- > 0;)
    if (coeff[d] != 0) return static_cast<long>(d);
  return -1;
}

Poly z_poly(long j, const Weights& w) {
  if (j < 0) throw std::invalid_argument("z_poly: negative row");
  if (w.q == 0) throw std::invalid_argument("z_poly: q must be nonzero");
  if (q_squared_is_one(w.q))
    throw std::domain_error("z_poly: coefficients are singular at q^2 = 1");
  const auto pre = factor_prefix(j, w.q);
  Poly out;
  out.coeff.assign(static_cast<size_t>(j) + 1, Rational(0));
  for (long k = 0; k <= j; ++k) {
    // prod_{s=1}^{j} (t q^{2(s-k)} - 1), expanded incrementally
    std::vector<Rational> p{Rational(1)};
    for (long s = 1; s <= j; ++s) {
      const Rational A = pow_rational(w.q, 2 * (s - k));
      std::vector<Rational> nxt(p.size() + 1, Rational(0));
      for (size_t d = 0; d < p.size(); ++d) {
        nxt[d + 1] += A * p[d];
        nxt[d] -= p[d];
      }
      p.swap(nxt);
    }
    const Rational scale = pow_rational(w.gamma, k) * pow_rational(w.q, k * k) /
                           (pre[static_cast<size_t>(j - k)] * pre[static_cast<size_t>(k)]);
    for (size_t d = 0; d < p.size(); ++d) out.coeff[d] += scale * p[d];
  }
  return out;
}

Rational brute_force_Z(int i, int j, const Weights& w) {
  if (i < 0 || j < 0) throw std::invalid_argument("brute_force_Z: negative endpoint");
  if (w.q == 0) throw std::invalid_argument("brute_force_Z: q must be nonzero");
  if (i + j > 24) throw std::length_error("brute_force_Z: i + j > 24");
  // power tables: area <= 2ij, diag count <= min(i,j)
  const long long amax = 2LL * i * j;
  std::vector<Rational> qp(static_cast<size_t>(amax) + 1), gp(static_cast<size_t>(std::min(i, j)) + 1);
  qp[0] = 1;
  for (size_t a = 1; a < qp.size(); ++a) qp[a] = qp[a - 1] * w.q;
  gp[0] = 1;
  for (size_t k = 1; k < gp.size(); ++k) gp[k] = gp[k - 1] * w.gamma;

  Rational acc = 0;
  auto dfs = [&](auto&& self, int x, int y, int k, long long area) -> void {
    if (x == 0 && y == j) {
      acc += gp[static_cast<size_t>(k)] * qp[static_cast<size_t>(area)];
      return;
    }
    if (y < j) self(self, x, y + 1, k, area + 2LL * x);
    if (x > 0) self(self, x - 1, y, k, area);
    if (x > 0 && y < j) self(self, x - 1, y + 1, k + 1, area + 2LL * x - 1);
  };
  dfs(dfs, i, 0, 0, 0);
  return acc;
}

}  // namespace aztec
