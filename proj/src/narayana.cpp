#include "stein/narayana.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "stein/metrics.hpp"

namespace stein::narayana {

namespace {

void require_n(long n, const char* what) {
  if (n < 2) throw std::domain_error(std::string(what) + ": n must be >= 2");
}

Rational r(long num, long den = 1) { return make_rational(num, den); }

}  // namespace

BirthDeathKernel kernel(long n) {
  require_n(n, "narayana::kernel");
  const Rational scale = r(1, n * (n - 1));
  std::vector<Rational> up, down;
  for (long k = 1; k <= n; ++k) {
    up.push_back(scale * (n - k) * (n - k + 1));
    down.push_back(scale * k * (k - 1));
  }
  return BirthDeathKernel(1, std::move(up), std::move(down));
}

Instance make_instance(long n) {
  require_n(n, "narayana::make_instance");
  const auto [mu, sigma2] = narayana_mean_var(n);
  return Instance{n, narayana_dist(n), kernel(n), mu, sigma2, r(2, n - 1)};
}

MomentSet closed_moments(long n) {
  require_n(n, "narayana::closed_moments");
  const Integer N = n;
  MomentSet m;
  m.m1 = Rational(N + 1, 2);
  m.m2 = Rational(N * N * N + 2 * N * N - 1, 4 * N - 2);
  m.m3 = Rational((N * N + 2 * N - 2) * (N + 1) * (N + 1), 8 * N - 4);
  const Integer quintic = N * N * N * N * N + 4 * N * N * N * N - 3 * N * N * N -
                          12 * N * N + 2 * N + 6;
  m.m4 = Rational(quintic * (N + 1), 4 * (2 * N - 1) * (2 * N - 3));
  m.m1.canonicalize();
  m.m2.canonicalize();
  m.m3.canonicalize();
  m.m4.canonicalize();
  return m;
}

Polynomial stationarity_polynomial(long n, unsigned power) {
  require_n(n, "narayana::stationarity_polynomial");
  const Rational scale = r(1, n * (n - 1));
  const Rational nn = n;
  // (n - K)(n - K + 1) and K(K - 1) as polynomials in K.
  const Polynomial up =
      Polynomial({nn * (nn + 1), -(2 * nn + 1), Rational(1)}) * Polynomial::constant(scale);
  const Polynomial down = Polynomial({Rational(0), Rational(-1), Rational(1)}) *
                          Polynomial::constant(scale);
  const Polynomial k_pow = Polynomial::monomial(power);
  return up * (shifted_power(1, power) - k_pow) +
         down * (shifted_power(-1, power) - k_pow);
}

namespace {

// Solves E q(K) = 0 for the moment of q's leading degree, given the lower
// moments in `m` (m[0] = 1).
Rational solve_top_moment(const Polynomial& q, const std::vector<Rational>& m,
                          int expected_degree) {
  if (q.degree() != expected_degree) {
    throw std::logic_error("stationarity identity has degree " +
                           std::to_string(q.degree()) + ", expected " +
                           std::to_string(expected_degree));
  }
  const auto top = static_cast<unsigned>(expected_degree);
  Rational lower = 0;
  for (unsigned j = 0; j < top; ++j) lower += q.coefficient(j) * m[j];
  return -lower / q.coefficient(top);
}

}  // namespace

MomentSet moment_ladder(long n) {
  require_n(n, "narayana::moment_ladder");
  std::vector<Rational> m{Rational(1)};
  // E[K' - K] = 0 pins down the mean.
  m.push_back(solve_top_moment(stationarity_polynomial(n, 1), m, 1));
  // E[K'^2 - K^2] = 0: the cubic terms cancel.
  m.push_back(solve_top_moment(stationarity_polynomial(n, 2), m, 2));
  // Symmetry: E (K - mu)^3 = 0.
  const Rational& mu = m[1];
  m.push_back(3 * mu * m[2] - 3 * mu * mu * m[1] + mu * mu * mu);
  // E[K'^4 - K^4] = 0: the K^5 and K^6 terms cancel.
  m.push_back(solve_top_moment(stationarity_polynomial(n, 4), m, 4));
  return {m[1], m[2], m[3], m[4]};
}

Rational var_s_closed(long n) {
  require_n(n, "narayana::var_s_closed");
  return r((n + 1) * (n - 2), 1) / (Rational((2 * n - 1) * (2 * n - 1)) * (2 * n - 3) * (n - 1));
}

VarSIdentities var_s_identities(long n) {
  const Instance inst = make_instance(n);
  VarSIdentities out;
  out.var_s_kernel = var_s(inst.kernel, inst.dist);
  out.var_s_closed = var_s_closed(n);

  auto product = [n](long k) { return Rational((k - 1) * (n - k)); };
  out.mean_product = inst.dist.expect(product);
  out.mean_product_sq = inst.dist.expect([&](long k) {
    const Rational p = product(k);
    return Rational(p * p);
  });
  out.var_product = out.mean_product_sq - out.mean_product * out.mean_product;

  const Rational nn = n;
  out.scaling_identity =
      out.var_s_kernel == 4 / (nn * nn * (nn - 1) * (nn - 1)) * out.var_product;
  out.mean_product_identity =
      out.mean_product == nn * (nn - 1) * (nn - 2) / (4 * nn - 2);
  const Rational quartic = nn * nn * nn * nn - 7 * nn * nn * nn + 19 * nn * nn - 23 * nn + 10;
  out.mean_product_sq_identity =
      out.mean_product_sq == nn * nn * quartic / (4 * (4 * nn * nn - 8 * nn + 3));
  out.var_product_identity =
      out.var_product == (nn + 1) * nn * nn * (nn - 1) * (nn - 2) /
                             (4 * (2 * nn - 1) * (2 * nn - 1) * (2 * nn - 3));
  out.closed_matches_kernel = out.var_s_closed == out.var_s_kernel;
  return out;
}

Surd intermediate_bound(long n) {
  require_n(n, "narayana::intermediate_bound");
  const Rational nn = n;
  const Rational radicand = nn * nn * (nn - 2) / ((2 * nn - 3) * (nn - 1) * (nn + 1));
  const Rational tail = Rational(28, 5) * (2 * nn - 1) / ((nn - 1) * (nn + 1));
  return Surd::scaled_root(1 / nn, radicand, tail);
}

Theorem1Report theorem1_certify(long n) {
  const Instance inst = make_instance(n);
  Theorem1Report out;
  out.n = n;
  out.pair_bound = certify(inst.kernel, inst.dist, inst.mu, inst.sigma2);
  out.pair_bound.params.insert(out.pair_bound.params.begin(), {"n", std::to_string(n)});
  out.intermediate = intermediate_bound(n);
  out.twelve_over_n = r(12, n);

  const Rational nn = n;
  out.tv_le_intermediate = out.pair_bound.tv_exact <= out.intermediate;
  out.intermediate_le_twelve = out.intermediate <= out.twelve_over_n;
  out.intermediate_equals_pair_bound =
      out.pair_bound.valid && out.intermediate == out.pair_bound.bound;
  out.radicand_below_half =
      nn * nn * (nn - 2) / ((2 * nn - 3) * (nn - 1) * (nn + 1)) < Rational(1, 2);
  out.tail_coefficient_le_11_2 =
      Rational(28, 5) * nn * (2 * nn - 1) / ((nn - 1) * (nn + 1)) <= Rational(56, 5);
  return out;
}

CorollaryChecks corollary_checks(long n) {
  require_n(n, "narayana::corollary_checks");
  const auto [mu, sigma2] = narayana_mean_var(n);
  const ExactDist dist = narayana_dist(n);
  const double sigma = std::sqrt(sigma2.get_d());
  CorollaryChecks out;
  out.kolmogorov = kolmogorov_vs_normal(dist, mu, sigma);
  out.kolmogorov_bound = 1.59 / std::sqrt(static_cast<double>(n));
  out.kolmogorov_ok = out.kolmogorov <= out.kolmogorov_bound;
  out.sigma2_ge_n_over_8 = sigma2 >= r(n, 8);
  out.local_limit = local_limit_stat(dist, mu, sigma);
  out.local_limit_scaled = out.local_limit * std::sqrt(static_cast<double>(n));
  return out;
}

}  // namespace stein::narayana
