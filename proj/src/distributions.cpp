#include "stein/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stein {

ExactDist::ExactDist(long offset, std::vector<Rational> probs)
    : offset_(offset), probs_(std::move(probs)) {
  Rational total = 0;
  for (const auto& p : probs_) {
    if (p < 0) throw std::domain_error("negative probability");
    total += p;
  }
  if (total != 1) {
    throw std::domain_error("probabilities sum to " + total.get_str() +
                            ", not 1");
  }
  size_t first = 0;
  while (probs_[first] == 0) ++first;
  size_t last = probs_.size();
  while (probs_[last - 1] == 0) --last;
  if (first > 0 || last < probs_.size()) {
    probs_ = std::vector<Rational>(probs_.begin() + static_cast<long>(first),
                                   probs_.begin() + static_cast<long>(last));
    offset_ += static_cast<long>(first);
  }
}

ExactDist ExactDist::from_weights(long offset, std::span<const Integer> weights) {
  Integer total = 0;
  for (const auto& w : weights) {
    if (w < 0) throw std::domain_error("negative weight");
    total += w;
  }
  if (total == 0) throw std::domain_error("all weights are zero");
  std::vector<Rational> probs;
  probs.reserve(weights.size());
  for (const auto& w : weights) {
    Rational p(w, total);
    p.canonicalize();
    probs.push_back(std::move(p));
  }
  return ExactDist(offset, std::move(probs));
}

ExactDist ExactDist::point_mass(long at) { return ExactDist(at, {Rational(1)}); }

Rational ExactDist::pmf(long k) const {
  if (!contains(k)) return 0;
  return probs_[static_cast<size_t>(k - offset_)];
}

Rational ExactDist::mean() const {
  return expect([](long k) { return Rational(k); });
}

Rational ExactDist::variance() const {
  const Rational mu = mean();
  return expect([&](long k) {
    const Rational d = k - mu;
    return Rational(d * d);
  });
}

double FloatDist::pmf(long k) const {
  if (k < offset || k > hi()) return 0.0;
  return probs[static_cast<size_t>(k - offset)];
}

FloatDist FloatDist::from_exact(const ExactDist& d) {
  FloatDist out;
  out.offset = d.offset();
  out.probs.reserve(d.size());
  for (const auto& p : d.probs()) out.probs.push_back(p.get_d());
  return out;
}

Rational BinHatParams::success_probability() const {
  return Rational(1, 2) - t;
}

Integer catalan(long n) {
  if (n < 0) throw std::domain_error("catalan: n < 0");
  return binomial(2 * n, n) / (n + 1);
}

Integer narayana_number(long n, long k) {
  if (n < 1 || k < 1 || k > n) {
    throw std::domain_error("narayana_number: need 1 <= k <= n, got n=" +
                            std::to_string(n) + " k=" + std::to_string(k));
  }
  return binomial(n, k - 1) * binomial(n, k) / n;
}

ExactDist narayana_dist(long n) {
  if (n < 1) throw std::domain_error("narayana_dist: n < 1");
  std::vector<Integer> weights;
  weights.reserve(static_cast<size_t>(n));
  for (long k = 1; k <= n; ++k) weights.push_back(narayana_number(n, k));
  return ExactDist::from_weights(1, weights);
}

MeanVar narayana_mean_var(long n) {
  if (n < 2) throw std::domain_error("narayana_mean_var: n < 2");
  return {make_rational(n + 1, 2),
          make_rational((n - 1) * (n + 1), 4 * (2 * n - 1))};
}

ExactDist poisson_binomial_dist(std::span<const Rational> p) {
  // Convolve over the common denominator D = prod(den_i) with integer
  // numerators; a single normalization at the end keeps gcd work out of the
  // inner loop.
  std::vector<Integer> weights{Integer(1)};
  for (const auto& pi : p) {
    if (pi < 0 || pi > 1) {
      throw std::domain_error("poisson_binomial_dist: p_i = " + pi.get_str() +
                              " outside [0,1]");
    }
    const Integer& a = pi.get_num();
    const Integer b_minus_a = pi.get_den() - pi.get_num();
    std::vector<Integer> next(weights.size() + 1);
    for (size_t k = 0; k < weights.size(); ++k) {
      next[k] += weights[k] * b_minus_a;
      next[k + 1] += weights[k] * a;
    }
    weights = std::move(next);
  }
  return ExactDist::from_weights(0, weights);
}

ExactDist hypergeometric_dist(long N, long n, long m) {
  if (N < 1 || n < 0 || n > N || m < 0 || m > N) {
    throw std::domain_error("hypergeometric_dist: need N >= 1, 0 <= n,m <= N");
  }
  const long lo = std::max(0L, n + m - N);
  const long hi = std::min(n, m);
  std::vector<Integer> weights;
  weights.reserve(static_cast<size_t>(hi - lo + 1));
  for (long k = lo; k <= hi; ++k) {
    weights.push_back(binomial(m, k) * binomial(N - m, n - k));
  }
  return ExactDist::from_weights(lo, weights);
}

BinHatParams binhat_params(const Rational& mu, const Rational& sigma2) {
  if (sigma2 <= 0) {
    throw std::domain_error("binhat_params: sigma2 must be positive");
  }
  BinHatParams out;
  out.mu = mu;
  out.sigma2 = sigma2;
  out.delta = fractional_part(Rational(-4 * sigma2));
  const Rational n_hat = 4 * sigma2 + out.delta;
  out.n_hat = n_hat.get_num().get_si();
  const Rational y = -mu + 2 * sigma2 + out.delta / 2;
  out.t = fractional_part(y) / n_hat;
  out.shift = Integer(-floor(y)).get_si();
  return out;
}

ExactDist binhat_dist(const BinHatParams& params) {
  if (!params.defined()) {
    throw std::domain_error("binhat_dist: success probability 1/2 - t is negative");
  }
  // C(n, j) a^j (b - a)^(n - j) / b^n with success probability a / b.
  const Rational q = params.success_probability();
  const Integer& a = q.get_num();
  const Integer b_minus_a = q.get_den() - q.get_num();
  const auto n = static_cast<unsigned long>(params.n_hat);
  std::vector<Integer> weights(n + 1);
  std::vector<Integer> a_pow(n + 1), c_pow(n + 1);
  a_pow[0] = 1;
  c_pow[0] = 1;
  for (unsigned long j = 1; j <= n; ++j) {
    a_pow[j] = a_pow[j - 1] * a;
    c_pow[j] = c_pow[j - 1] * b_minus_a;
  }
  for (unsigned long j = 0; j <= n; ++j) {
    weights[j] = binomial(static_cast<long>(n), static_cast<long>(j)) *
                 a_pow[j] * c_pow[n - j];
  }
  return ExactDist::from_weights(params.shift, weights);
}

FloatDist translated_poisson_dist(const Rational& mu, const Rational& sigma2,
                                  double truncation_mass) {
  if (sigma2 <= 0) {
    throw std::domain_error("translated_poisson_dist: sigma2 must be positive");
  }
  if (!(truncation_mass > 0.0 && truncation_mass <= 1e-9)) {
    throw std::domain_error(
        "translated_poisson_dist: truncation_mass must lie in (0, 1e-9]");
  }
  const Rational diff = mu - sigma2;
  const double lambda = Rational(sigma2 + fractional_part(diff)).get_d();
  FloatDist out;
  out.offset = floor(diff).get_si();
  const double log_lambda = std::log(lambda);
  auto log_pmf = [&](long k) {
    return static_cast<double>(k) * log_lambda - lambda -
           std::lgamma(static_cast<double>(k) + 1.0);
  };
  for (long k = 0;; ++k) {
    out.probs.push_back(std::exp(log_pmf(k)));
    // Tail past k is dominated by a geometric series with ratio
    // lambda / (k + 2) once k + 2 > lambda.
    const double ratio = lambda / (static_cast<double>(k) + 2.0);
    if (ratio < 0.5) {
      const double tail = std::exp(log_pmf(k + 1)) / (1.0 - ratio);
      if (tail < truncation_mass) {
        out.omitted_mass = tail;
        break;
      }
    }
  }
  return out;
}

MomentSet raw_moments(const ExactDist& d, int up_to) {
  if (up_to < 1 || up_to > 4) {
    throw std::domain_error("raw_moments: up_to must be in 1..4");
  }
  Rational acc[4] = {0, 0, 0, 0};
  long k = d.offset();
  for (const auto& p : d.probs()) {
    Rational power = p;
    for (int r = 0; r < up_to; ++r) {
      power *= k;
      acc[r] += power;
    }
    ++k;
  }
  return {acc[0], acc[1], acc[2], acc[3]};
}

}  // namespace stein
