#include "stein/stein_core.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>

#include "stein/metrics.hpp"

namespace stein {

BirthDeathKernel::BirthDeathKernel(long lo, std::vector<Rational> up,
                                   std::vector<Rational> down)
    : lo_(lo), up_(std::move(up)), down_(std::move(down)) {
  if (up_.empty() || up_.size() != down_.size()) {
    throw std::domain_error("BirthDeathKernel: up/down sizes differ or are empty");
  }
  for (size_t i = 0; i < up_.size(); ++i) {
    if (up_[i] < 0 || down_[i] < 0 || up_[i] + down_[i] > 1) {
      throw std::domain_error("BirthDeathKernel: invalid probabilities at state " +
                              std::to_string(lo_ + static_cast<long>(i)));
    }
  }
  if (up_.back() != 0) throw std::domain_error("BirthDeathKernel: up(hi) != 0");
  if (down_.front() != 0) {
    throw std::domain_error("BirthDeathKernel: down(lo) != 0");
  }
}

size_t BirthDeathKernel::index(long k) const {
  if (!contains(k)) {
    throw std::domain_error("BirthDeathKernel: state " + std::to_string(k) +
                            " outside [" + std::to_string(lo()) + ", " +
                            std::to_string(hi()) + "]");
  }
  return static_cast<size_t>(k - lo_);
}

const Rational& BirthDeathKernel::up(long k) const { return up_[index(k)]; }
const Rational& BirthDeathKernel::down(long k) const { return down_[index(k)]; }

namespace {

void require_matching_support(const BirthDeathKernel& kernel, const ExactDist& pi) {
  if (kernel.lo() != pi.lo() || kernel.hi() != pi.hi()) {
    throw std::domain_error("kernel states [" + std::to_string(kernel.lo()) + ", " +
                            std::to_string(kernel.hi()) +
                            "] do not match the support of the law [" +
                            std::to_string(pi.lo()) + ", " +
                            std::to_string(pi.hi()) + "]");
  }
}

}  // namespace

Rational check_reversibility(const BirthDeathKernel& kernel, const ExactDist& pi) {
  require_matching_support(kernel, pi);
  Rational worst = 0;
  for (long k = pi.lo(); k < pi.hi(); ++k) {
    const Rational flow_up = pi.pmf(k) * kernel.up(k);
    const Rational flow_down = pi.pmf(k + 1) * kernel.down(k + 1);
    worst = std::max(worst, abs(Rational(flow_up - flow_down)));
  }
  return worst;
}

Rational s_function(const BirthDeathKernel& kernel, long k) {
  return kernel.up(k) + kernel.down(k);
}

PairDiagnostics extract_lambda(const BirthDeathKernel& kernel, const ExactDist& pi) {
  PairDiagnostics out;
  out.reversibility_residual = check_reversibility(kernel, pi);
  const Rational mu = pi.mean();

  for (long k = pi.lo(); k <= pi.hi(); ++k) {
    if (k != mu) {
      const Rational drift = kernel.up(k) - kernel.down(k);
      out.lambda = -drift / (k - mu);
      break;
    }
  }

  out.linearity_residual = 0;
  if (out.lambda) {
    // E[X' - mu | X = k] - (1 - lambda)(k - mu) = drift(k) + lambda (k - mu)
    for (long k = pi.lo(); k <= pi.hi(); ++k) {
      const Rational r = kernel.up(k) - kernel.down(k) + *out.lambda * (k - mu);
      out.linearity_residual = std::max(out.linearity_residual, abs(r));
    }
  }

  Rational second = 0;
  out.mean_s = 0;
  for (long k = pi.lo(); k <= pi.hi(); ++k) {
    Rational s = s_function(kernel, k);
    out.mean_s += pi.pmf(k) * s;
    second += pi.pmf(k) * s * s;
    out.s_values.push_back(std::move(s));
  }
  out.var_s = second - out.mean_s * out.mean_s;
  return out;
}

Rational var_s(const BirthDeathKernel& kernel, const ExactDist& pi) {
  require_matching_support(kernel, pi);
  Rational first = 0, second = 0;
  for (long k = pi.lo(); k <= pi.hi(); ++k) {
    const Rational s = s_function(kernel, k);
    first += pi.pmf(k) * s;
    second += pi.pmf(k) * s * s;
  }
  return second - first * first;
}

Surd theorem2_bound(const Rational& lambda, const Rational& sigma2,
                    const Rational& var_s) {
  if (lambda <= 0 || sigma2 <= 0 || var_s < 0) {
    throw std::domain_error("theorem2_bound: need lambda > 0, sigma2 > 0, var_s >= 0");
  }
  const Rational tail = Rational(7, 5) / sigma2;
  return Surd::scaled_root(1 / (2 * lambda * sigma2), var_s, tail);
}

BoundReport certify(const BirthDeathKernel& kernel, const ExactDist& pi,
                    const Rational& mu, const Rational& sigma2) {
  BoundReport report;
  report.params = {{"mu", mu.get_str()}, {"sigma2", sigma2.get_str()}};
  if (sigma2 <= 0) {
    report.note = "sigma2 must be positive";
    return report;
  }
  const BinHatParams params = binhat_params(mu, sigma2);
  if (!params.defined()) {
    report.note = "Bi-hat undefined: 1/2 - t < 0";
    return report;
  }
  report.tv_exact = tv_distance(pi, binhat_dist(params));

  const PairDiagnostics diag = extract_lambda(kernel, pi);
  if (!diag.lambda || *diag.lambda <= 0) {
    report.note = "lambda undefined";
    return report;
  }
  report.params.emplace_back("lambda", diag.lambda->get_str());
  report.term_tail = Rational(7, 5) / sigma2;
  report.term_var_s = Surd::scaled_root(1 / (2 * *diag.lambda * sigma2), diag.var_s);
  report.bound = theorem2_bound(*diag.lambda, sigma2, diag.var_s);
  report.slack_ratio = report.tv_exact.get_d() / report.bound.to_double();
  report.holds = report.tv_exact <= report.bound;

  if (diag.reversibility_residual != 0) {
    report.note = "kernel is not reversible with respect to the law";
  } else if (diag.linearity_residual != 0) {
    report.note = "linear regression condition fails";
  } else if (pi.mean() != mu || pi.variance() != sigma2) {
    report.note = "mu/sigma2 differ from the law's mean/variance";
  } else {
    report.valid = true;
  }
  return report;
}

std::vector<TestFunction> make_test_functions(long lo, long hi, int max_degree,
                                              int random_count, std::uint64_t seed) {
  std::vector<TestFunction> out;
  for (int r = 0; r <= max_degree; ++r) {
    out.push_back({"x^" + std::to_string(r), [r](long k) {
                     return Rational(pow(Rational(k), static_cast<unsigned long>(r)));
                   }});
  }
  std::mt19937_64 rng(seed);
  const long window_lo = lo - 1;
  const long window_hi = hi + 2;
  for (int i = 0; i < random_count; ++i) {
    auto values = std::make_shared<std::vector<Rational>>();
    for (long k = window_lo; k <= window_hi; ++k) {
      const long num = static_cast<long>(rng() % 41) - 20;
      const long den = static_cast<long>(rng() % 12) + 1;
      values->push_back(make_rational(num, den));
    }
    out.push_back({"random#" + std::to_string(i), [values, window_lo, window_hi](long k) {
                     if (k < window_lo || k > window_hi) return Rational(0);
                     return (*values)[static_cast<size_t>(k - window_lo)];
                   }});
  }
  return out;
}

Rational stein_a(const BinHatParams& params, long k) {
  return params.n_hat * params.t * params.t - (k - params.mu) * params.t -
         params.delta / 4;
}

Rational stein_operator(const IntFunction& g, long k, const BinHatParams& params) {
  const Rational g0 = g(k);
  const Rational g1 = g(k + 1);
  const Rational theta = (g1 + g0) / 2;
  const Rational delta_g = g1 - g0;
  return (k - params.mu) * theta - params.sigma2 * delta_g +
         stein_a(params, k) * delta_g;
}

Rational characterization_residual(const ExactDist& law, const BinHatParams& params,
                                   const std::vector<TestFunction>& functions) {
  Rational worst = 0;
  for (const auto& fn : functions) {
    const Rational e =
        law.expect([&](long k) { return stein_operator(fn.eval, k, params); });
    worst = std::max(worst, abs(e));
  }
  return worst;
}

Rational characterization_check(const BinHatParams& params,
                                const std::vector<TestFunction>& functions) {
  return characterization_residual(binhat_dist(params), params, functions);
}

ExactDist perturbed_law(const ExactDist& d, std::uint64_t seed) {
  std::vector<Rational> probs(d.probs().begin(), d.probs().end());
  std::vector<std::pair<size_t, size_t>> unequal;
  for (size_t i = 0; i < probs.size(); ++i) {
    for (size_t j = i + 1; j < probs.size(); ++j) {
      if (probs[i] != probs[j]) unequal.emplace_back(i, j);
    }
  }
  if (!unequal.empty()) {
    std::mt19937_64 rng(seed);
    const auto [i, j] = unequal[rng() % unequal.size()];
    std::swap(probs[i], probs[j]);
    return ExactDist(d.offset(), std::move(probs));
  }
  // Equal masses everywhere: move half of the first atom onto the last one,
  // or one step right for a point mass.
  const Rational half = probs.front() / 2;
  probs.front() -= half;
  if (probs.size() == 1) {
    probs.push_back(half);
  } else {
    probs.back() += half;
  }
  return ExactDist(d.offset(), std::move(probs));
}

Rational pair_identity_check(const BirthDeathKernel& kernel, const ExactDist& pi,
                             const Rational& mu, const Rational& lambda,
                             const std::vector<TestFunction>& functions) {
  require_matching_support(kernel, pi);
  if (lambda == 0) throw std::domain_error("pair_identity_check: lambda == 0");
  Rational worst = 0;
  for (const auto& fn : functions) {
    const auto& g = fn.eval;
    Rational lhs_plain = 0, rhs_plain = 0, lhs_theta = 0, rhs_theta = 0;
    for (long k = pi.lo(); k <= pi.hi(); ++k) {
      const Rational& p = pi.pmf(k);
      const Rational g0 = g(k);
      const Rational g1 = g(k + 1);
      const Rational dg = g1 - g0;
      lhs_plain += p * (k - mu) * g0;
      rhs_plain += p * kernel.up(k) * dg;
      lhs_theta += p * (k - mu) * (g0 + g1) / 2;
      rhs_theta += p * s_function(kernel, k) * dg;
    }
    worst = std::max(worst, abs(Rational(lhs_plain - rhs_plain / lambda)));
    worst = std::max(worst, abs(Rational(lhs_theta - rhs_theta / (2 * lambda))));
  }
  return worst;
}

TailEstimates tail_and_a_estimates(const ExactDist& pi, const BinHatParams& params) {
  TailEstimates out;
  const Rational& mu = params.mu;
  const Rational& sigma2 = params.sigma2;
  out.sigma2 = sigma2;
  out.large_variance = sigma2 >= Rational(7, 5);

  const long t_lo = params.shift;
  const long t_hi = params.shift + params.n_hat;
  const Rational radius = 2 * sigma2 - 1;
  out.outside_t = 0;
  out.deviation_mass = 0;
  out.e_abs_a = 0;
  for (long k = pi.lo(); k <= pi.hi(); ++k) {
    const Rational& p = pi.pmf(k);
    if (k < t_lo || k > t_hi) out.outside_t += p;
    if (abs(Rational(k - mu)) >= radius) out.deviation_mass += p;
    out.e_abs_a += p * abs(stein_a(params, k));
  }
  if (radius > 0) out.chebyshev = sigma2 / (radius * radius);
  out.point61 = Rational(61, 100) / sigma2;

  const Rational& t = params.t;
  out.a_majorant = Surd(params.n_hat * t * t + params.delta / 4, t * t * sigma2);

  out.outside_le_deviation = out.outside_t <= out.deviation_mass;
  out.deviation_le_chebyshev = out.chebyshev && out.deviation_mass <= *out.chebyshev;
  out.chebyshev_le_point61 = out.chebyshev && *out.chebyshev <= out.point61;
  out.e_abs_a_le_majorant = out.e_abs_a <= out.a_majorant;
  out.majorant_le_three_quarters = out.a_majorant <= Rational(3, 4);
  out.e_abs_a_le_three_quarters = out.e_abs_a <= Rational(3, 4);
  return out;
}

}  // namespace stein
