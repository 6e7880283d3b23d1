#include "aztec/lgv.hpp"

#include <algorithm>
#include <stdexcept>

namespace aztec {

void validate_config(const StartConfig& cfg) {
  if (cfg.n < 0 || cfg.m < 0) throw std::invalid_argument("StartConfig: negative size");
  if (static_cast<int>(cfg.starts.size()) != cfg.n + 1)
    throw std::invalid_argument("StartConfig: starts must have n + 1 entries");
  if (cfg.starts.front() != 0) throw std::invalid_argument("StartConfig: a_0 must be 0");
  if (cfg.starts.back() != cfg.m) throw std::invalid_argument("StartConfig: a_n must be m");
  for (size_t i = 1; i < cfg.starts.size(); ++i)
    if (cfg.starts[i] <= cfg.starts[i - 1])
      throw std::invalid_argument("StartConfig: starts must be strictly increasing");
}

StartConfig config_from_starts(std::vector<int> starts) {
  if (starts.empty()) throw std::invalid_argument("StartConfig: empty starts");
  StartConfig cfg;
  cfg.n = static_cast<int>(starts.size()) - 1;
  cfg.m = starts.back();
  cfg.starts = std::move(starts);
  validate_config(cfg);
  return cfg;
}

StartConfig config_from_defects(int n, int m, const std::vector<int>& defects) {
  if (static_cast<int>(defects.size()) != m - n)
    throw std::invalid_argument("defect list size must be m - n");
  std::vector<bool> is_defect(static_cast<size_t>(m) + 1, false);
  for (int b : defects) {
    if (b < 0 || b > m) throw std::invalid_argument("defect out of range");
    if (is_defect[static_cast<size_t>(b)]) throw std::invalid_argument("repeated defect");
    is_defect[static_cast<size_t>(b)] = true;
  }
  StartConfig cfg;
  cfg.n = n;
  cfg.m = m;
  for (int a = 0; a <= m; ++a)
    if (!is_defect[static_cast<size_t>(a)]) cfg.starts.push_back(a);
  validate_config(cfg);
  return cfg;
}

std::vector<int> config_defects(const StartConfig& cfg) {
  std::vector<bool> is_start(static_cast<size_t>(cfg.m) + 1, false);
  for (int a : cfg.starts) is_start[static_cast<size_t>(a)] = true;
  std::vector<int> out;
  for (int b = 0; b <= cfg.m; ++b)
    if (!is_start[static_cast<size_t>(b)]) out.push_back(b);
  return out;
}

StartConfig aztec_diamond_config(int n) {
  StartConfig cfg;
  cfg.n = n;
  cfg.m = n;
  for (int i = 0; i <= n; ++i) cfg.starts.push_back(i);
  validate_config(cfg);
  return cfg;
}

ExactMatrix build_gv_matrix_serial(const StartConfig& cfg, const Weights& w) {
  validate_config(cfg);
  const int d = cfg.n + 1;
  ExactMatrix a(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      a[static_cast<size_t>(i)][static_cast<size_t>(j)] = single_path_Z(cfg.starts[static_cast<size_t>(i)], j, w);
  return a;
}

ExactMatrix build_gv_matrix(const StartConfig& cfg, const Weights& w) {
  validate_config(cfg);
  const int d = cfg.n + 1;
  ExactMatrix a(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d)));
#pragma omp parallel for collapse(2) schedule(dynamic)
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      a[static_cast<size_t>(i)][static_cast<size_t>(j)] = single_path_Z(cfg.starts[static_cast<size_t>(i)], j, w);
  return a;
}

Rational det(ExactMatrix a) {
  const size_t d = a.size();
  for (const auto& row : a)
    if (row.size() != d) throw std::invalid_argument("det: matrix not square");
  Rational out = 1;
  for (size_t col = 0; col < d; ++col) {
    size_t piv = col;
    while (piv < d && a[piv][col] == 0) ++piv;
    if (piv == d) return Rational(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      out = -out;
    }
    out *= a[col][col];
    const Rational inv = 1 / a[col][col];
    for (size_t r = col + 1; r < d; ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] * inv;
      for (size_t c = col; c < d; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return out;
}

ExactMatrix mat_mul(const ExactMatrix& a, const ExactMatrix& b) {
  const size_t d = a.size();
  ExactMatrix out(d, std::vector<Rational>(d, Rational(0)));
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < d; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Rational partition_det(const StartConfig& cfg, const Weights& w) {
  return det(build_gv_matrix(cfg, w));
}

Rational partition_product(const StartConfig& cfg, const Weights& w) {
  validate_config(cfg);
  if (w.q == 0) throw std::invalid_argument("partition_product: q must be nonzero");
  if (w.q == -1)
    throw std::domain_error("partition_product: Vandermonde ratio is singular at q = -1");
  const long n = cfg.n;
  Rational out = pow_rational(w.q, n * (n + 1) * (2 * n + 1) / 6);
  for (long s = 0; s < n; ++s)
    out *= pow_rational(w.gamma + pow_rational(w.q, 2 * s + 1), n - s);
  if (w.q == 1) {
    // lim_{q->1} Delta(q^{2a_i}) / Delta(q^{2i}) = prod_{i>j} (a_i - a_j)/(i - j)
    Rational ratio = 1;
    for (long i = 1; i <= n; ++i)
      for (long j = 0; j < i; ++j)
        ratio *= Rational(cfg.starts[static_cast<size_t>(i)] - cfg.starts[static_cast<size_t>(j)], i - j);
    ratio.canonicalize();
    return out * ratio;
  }
  std::vector<Rational> pa(static_cast<size_t>(n) + 1), pi(static_cast<size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    pa[static_cast<size_t>(i)] = pow_rational(w.q, 2L * cfg.starts[static_cast<size_t>(i)]);
    pi[static_cast<size_t>(i)] = pow_rational(w.q, 2L * i);
  }
  Rational num = 1, den = 1;
  for (long i = 1; i <= n; ++i)
    for (long j = 0; j < i; ++j) {
      num *= pa[static_cast<size_t>(i)] - pa[static_cast<size_t>(j)];
      den *= pi[static_cast<size_t>(i)] - pi[static_cast<size_t>(j)];
    }
  if (den == 0) throw std::domain_error("partition_product: degenerate q");
  return out * num / den;
}

namespace {

// Powers q^{2 a_i}; they must be pairwise distinct for the LU formulas.
std::vector<Rational> start_powers_checked(const StartConfig& cfg, const Weights& w) {
  if (w.q == 0 || q_squared_is_one(w.q))
    throw std::domain_error("LU factorization needs pairwise distinct q^{2 a_i} (q not 0, +-1)");
  std::vector<Rational> xs(cfg.starts.size());
  for (size_t i = 0; i < cfg.starts.size(); ++i) xs[i] = pow_rational(w.q, 2L * cfg.starts[i]);
  return xs;
}

}  // namespace

ExactMatrix lu_inverse_L(const StartConfig& cfg, const Weights& w) {
  validate_config(cfg);
  const auto xs = start_powers_checked(cfg, w);
  const size_t d = xs.size();
  ExactMatrix out(d, std::vector<Rational>(d, Rational(0)));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j <= i; ++j) {
      Rational num = 1;
      for (size_t s = 0; s < i; ++s) num *= xs[i] - xs[s];
      Rational den = 1;
      for (size_t s = 0; s <= i; ++s)
        if (s != j) den *= xs[j] - xs[s];
      out[i][j] = num / den;
    }
  return out;
}

Rational u_diag_last(const StartConfig& cfg, const Weights& w) {
  validate_config(cfg);
  const auto xs = start_powers_checked(cfg, w);
  const long n = cfg.n;
  Rational out = 1;
  for (long s = 0; s < n; ++s) {
    const Rational qodd = pow_rational(w.q, 2 * s + 1);
    out *= qodd * (w.gamma + qodd) * (xs[static_cast<size_t>(n)] - xs[static_cast<size_t>(s)]) /
           (pow_rational(w.q, 2 * n) - pow_rational(w.q, 2 * s));
  }
  return out;
}

Rational one_point_H(const StartConfig& cfg, int ell, const Weights& w) {
  validate_config(cfg);
  if (ell < 0) throw std::invalid_argument("one_point_H: negative exit column");
  if (ell == 0) return Rational(1);
  if (ell > cfg.m) return Rational(0);
  const auto xs = start_powers_checked(cfg, w);
  const size_t d = xs.size();
  const long n = cfg.n;
  Rational top = 1;  // prod_{s<n} (q^{2a_n} - q^{2a_s})
  for (size_t s = 0; s + 1 < d; ++s) top *= xs[d - 1] - xs[s];
  Rational sum = 0;
  for (size_t k = 0; k < d; ++k) {
    if (cfg.starts[k] < ell) continue;
    Rational den = 1;
    for (size_t s = 0; s < d; ++s)
      if (s != k) den *= xs[k] - xs[s];
    sum += top / den * single_path_Z(cfg.starts[k] - ell, n, w);
  }
  return pow_rational(w.q, 2L * n * ell) * sum / u_diag_last(cfg, w);
}

Rational escape_Y(int ell, int r, const Weights& w) {
  if (ell < 0 || r < 1) throw std::invalid_argument("escape_Y: need ell >= 0, r >= 1");
  if (ell == 0) return Rational(1);
  // z_{r-1}(q^{2i}) = single_path_Z(i, r-1), valid at any q
  return pow_rational(w.q, 2L * ell) * single_path_Z(ell, r - 1, w) +
         w.gamma * pow_rational(w.q, 2L * ell - 1) * single_path_Z(ell - 1, r - 1, w);
}

}  // namespace aztec
