#include "stein/applications.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "stein/metrics.hpp"

namespace stein::applications {

namespace {

void validate_p(std::span<const Rational> p) {
  if (p.empty()) throw std::domain_error("empty probability list");
  for (const auto& pi : p) {
    if (pi < 0 || pi > 1) {
      throw std::domain_error("p_i = " + pi.get_str() + " outside [0,1]");
    }
  }
}

Rational sum_variances(std::span<const Rational> p) {
  Rational s = 0;
  for (const auto& pi : p) s += pi * (1 - pi);
  return s;
}

std::string digest(std::span<const Rational> p) {
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i == 5 && p.size() > 6) {
      out += ",...(" + std::to_string(p.size()) + " total)";
      break;
    }
    if (i) out += ",";
    out += p[i].get_str();
  }
  return out;
}

// Law of the sum of all indicators but `skip`, on {0, ..., n-1}, unnormalized
// over the product of denominators of the remaining p_j.
std::vector<Rational> leave_one_out(std::span<const Rational> p, size_t skip) {
  std::vector<Rational> probs{Rational(1)};
  for (size_t j = 0; j < p.size(); ++j) {
    if (j == skip) continue;
    std::vector<Rational> next(probs.size() + 1, Rational(0));
    for (size_t k = 0; k < probs.size(); ++k) {
      next[k] += probs[k] * (1 - p[j]);
      next[k + 1] += probs[k] * p[j];
    }
    probs = std::move(next);
  }
  return probs;
}

}  // namespace

PBInstance make_pb_instance(std::span<const Rational> p) {
  validate_p(p);
  PBInstance out{std::vector<Rational>(p.begin(), p.end()),
                 poisson_binomial_dist(p),
                 0,
                 sum_variances(p),
                 make_rational(1, static_cast<long>(p.size()))};
  for (const auto& pi : p) out.mu += pi;
  return out;
}

Rational pb_var_s(std::span<const Rational> p) {
  validate_p(p);
  Rational acc = 0;
  for (const auto& pi : p) {
    const Rational c = 1 - 2 * pi;
    acc += c * c * pi * (1 - pi);
  }
  const Rational n = static_cast<long>(p.size());
  return acc / (n * n);
}

BirthDeathKernel pb_induced_kernel(std::span<const Rational> p) {
  validate_p(p);
  const ExactDist dist = poisson_binomial_dist(p);
  const Rational n = static_cast<long>(p.size());
  std::vector<Rational> up(dist.size(), Rational(0));
  std::vector<Rational> down(dist.size(), Rational(0));
  for (size_t i = 0; i < p.size(); ++i) {
    const Rational w = p[i] * (1 - p[i]);
    if (w == 0) continue;
    const std::vector<Rational> rest = leave_one_out(p, i);
    auto rest_at = [&](long k) {
      return (k >= 0 && k < static_cast<long>(rest.size()))
                 ? rest[static_cast<size_t>(k)]
                 : Rational(0);
    };
    for (long k = dist.lo(); k <= dist.hi(); ++k) {
      const auto idx = static_cast<size_t>(k - dist.lo());
      // xi_i = 0 and the others sum to k, then xi_i' = 1.
      up[idx] += w * rest_at(k);
      // xi_i = 1 and the others sum to k - 1, then xi_i' = 0.
      down[idx] += w * rest_at(k - 1);
    }
  }
  for (long k = dist.lo(); k <= dist.hi(); ++k) {
    const auto idx = static_cast<size_t>(k - dist.lo());
    const Rational denom = n * dist.pmf(k);
    up[idx] /= denom;
    down[idx] /= denom;
  }
  return BirthDeathKernel(dist.lo(), std::move(up), std::move(down));
}

Surd bound6(std::span<const Rational> p) {
  validate_p(p);
  const Rational sigma2 = sum_variances(p);
  if (sigma2 == 0) throw std::domain_error("bound6: degenerate indicators");
  Rational sum = 0;
  for (const auto& pi : p) {
    const Rational c = 1 - 2 * pi;
    sum += c * c * pi * (1 - pi);
  }
  return Surd::scaled_root(1 / (2 * sigma2), sum, Rational(7, 5) / sigma2);
}

Surd bound7(std::span<const Rational> p) {
  validate_p(p);
  const Rational sigma2 = sum_variances(p);
  if (sigma2 == 0) throw std::domain_error("bound7: degenerate indicators");
  Rational sum = 0;
  for (const auto& pi : p) sum += pi * pi * pi * (1 - pi);
  return Surd::scaled_root(1 / sigma2, sum, 2 / sigma2);
}

Theorem3Report theorem3_certify(std::span<const Rational> p) {
  const PBInstance inst = make_pb_instance(p);
  Theorem3Report out;
  auto& rep = out.report;
  rep.params = {{"n", std::to_string(p.size())},
                {"p", digest(p)},
                {"mu", inst.mu.get_str()},
                {"sigma2", inst.sigma2.get_str()},
                {"lambda", inst.lambda.get_str()}};
  if (inst.degenerate()) {
    out.degenerate = true;
    rep.note = "degenerate: sum p_i (1 - p_i) = 0";
    return out;
  }
  const BinHatParams params = binhat_params(inst.mu, inst.sigma2);
  if (!params.defined()) {
    out.binhat_undefined = true;
    rep.note = "Bi-hat undefined: 1/2 - t < 0";
    return out;
  }
  rep.tv_exact = tv_distance(inst.dist, binhat_dist(params));
  rep.bound = bound6(p);
  rep.term_tail = Rational(7, 5) / inst.sigma2;
  const Rational vs = pb_var_s(p);
  rep.term_var_s = Surd::scaled_root(1 / (2 * inst.lambda * inst.sigma2), vs);
  out.pair_form = theorem2_bound(inst.lambda, inst.sigma2, vs);
  out.forms_agree = out.pair_form == rep.bound;
  rep.holds = rep.tv_exact <= rep.bound;
  rep.slack_ratio = rep.tv_exact.get_d() / rep.bound.to_double();
  rep.valid = true;
  return out;
}

Eq7Comparison eq7_tp_comparison(std::span<const Rational> p) {
  const PBInstance inst = make_pb_instance(p);
  if (inst.degenerate()) throw std::domain_error("eq7_tp_comparison: degenerate indicators");
  Eq7Comparison out;
  out.bound6 = bound6(p);
  out.bound7 = bound7(p);
  out.six_is_smaller = out.bound6 < out.bound7;
  const FloatDist tp = translated_poisson_dist(inst.mu, inst.sigma2);
  out.tv_translated_poisson = tv_distance_float(FloatDist::from_exact(inst.dist), tp);
  // Rounding in the float pmfs is far below the truncation allowance.
  out.tv_tp_error = tp.omitted_mass + 1e-12;
  out.tv_binhat = tv_distance(inst.dist, binhat_dist(binhat_params(inst.mu, inst.sigma2)));
  out.tp_within_bound7 =
      out.tv_translated_poisson - out.tv_tp_error <= out.bound7.to_double();
  return out;
}

BirthDeathKernel hyp_kernel(long N, long n, long m) {
  if (!(1 <= m && m < N && 1 <= n && n < N)) {
    throw std::domain_error("hyp_kernel: need 1 <= m < N and 1 <= n < N");
  }
  const long lo = std::max(0L, n + m - N);
  const long hi = std::min(n, m);
  const Rational scale = make_rational(1, m * (N - m + 1));
  std::vector<Rational> up, down;
  for (long k = lo; k <= hi; ++k) {
    up.push_back(scale * (m - k) * (n - k));
    down.push_back(scale * k * (N - m - n + k));
    if (up.back() + down.back() > 1) {
      throw std::domain_error("hyp_kernel: negative stay probability at state " +
                              std::to_string(k));
    }
  }
  return BirthDeathKernel(lo, std::move(up), std::move(down));
}

Rational hyp_variance(long N, long n, long m) {
  const Integer num = Integer(m) * n * (N - m) * (N - n);
  const Integer den = Integer(N - 1) * N * N;
  Rational out(num, den);
  out.canonicalize();
  return out;
}

HypInstance make_hyp_instance(long N, long n, long m) {
  BirthDeathKernel k = hyp_kernel(N, n, m);
  return HypInstance{N,
                     n,
                     m,
                     hypergeometric_dist(N, n, m),
                     make_rational(n * m, N),
                     hyp_variance(N, n, m),
                     make_rational(N, m * (N - m + 1)),
                     std::move(k)};
}

HypVariancePolynomial hyp_s_and_varpoly(long N, long n, long m) {
  if (N < 4) throw std::domain_error("hyp_s_and_varpoly: need N >= 4");
  const HypInstance inst = make_hyp_instance(N, n, m);
  HypVariancePolynomial out;

  const long linear = N - 2 * m - 2 * n;
  out.s_matches_closed_form = true;
  for (long k = inst.dist.lo(); k <= inst.dist.hi(); ++k) {
    const Rational closed = inst.lambda * (m * n + linear * k + 2 * k * k) / N;
    if (s_function(inst.kernel, k) != closed) out.s_matches_closed_form = false;
  }

  auto f = [linear](long k) { return Rational(linear * k + 2 * k * k); };
  const Rational e1 = inst.dist.expect(f);
  const Rational e2 = inst.dist.expect([&](long k) {
    const Rational v = f(k);
    return Rational(v * v);
  });
  out.variance_direct = e2 - e1 * e1;

  const Integer NN = N, mm = m, nn = n;
  const Integer A = NN - 2 * mm;
  const Integer B = NN - 2 * nn;
  const Integer t1 = A * A * B * B * (NN - 2);
  const Integer t2 = 2 * A * B * (4 * mm - 3) * (nn - 1);
  const Integer t3 = 4 * A * (mm - 1) * (nn - 1) * (2 * mm + 2 * nn - 1);
  const Integer t4 = 8 * (mm - 1) * mm * (nn - 1) * (2 * mm - nn - 1);
  const Integer t5 = -A * A * B;
  const Integer den = (NN - 3) * (NN - 2) * (NN - 1);
  const Rational& s2 = inst.sigma2;
  out.variance_closed = s2 * make_rational(Integer(t1 + t2 + t3 + t4 + t5), den);
  out.identity_holds = out.variance_direct == out.variance_closed;

  auto ratio = [&](const Integer& t) {
    return make_rational(t, den);
  };
  out.term_13n = ratio(t2) <= 13 * N;
  out.term_45n = ratio(t3) <= 45 * N;
  out.term_72n = ratio(t4 + t5) <= 72 * N;
  const Rational a2b2 = Rational(A * A * B * B);
  out.first_inequality =
      out.variance_direct <= s2 * (a2b2 / Rational((NN - 3) * (NN - 1)) + 130 * N);
  out.second_inequality =
      out.variance_direct <= s2 * (6 * a2b2 / Rational(NN * NN) + 130 * N);
  return out;
}

Surd bound8(long N, long n, long m) {
  const Rational sigma2 = hyp_variance(N, n, m);
  const Integer NN = N;
  const Integer A = NN - 2 * m;
  const Integer B = NN - 2 * n;
  const Rational inner = make_rational(Integer(6 * A * A * B * B), Integer(NN * NN * NN)) + 130;
  // sqrt(inner) / (2 sqrt(N) sigma) = sqrt(inner / (4 N sigma^2))
  return Surd(Rational(7, 5) / sigma2, inner / (4 * N * sigma2));
}

Theorem4Report theorem4_certify(long N, long n, long m) {
  if (N < 4) throw std::domain_error("theorem4_certify: need N >= 4");
  const HypInstance inst = make_hyp_instance(N, n, m);
  Theorem4Report out;
  out.pair = certify(inst.kernel, inst.dist, inst.mu, inst.sigma2);

  auto& rep = out.report;
  rep.params = {{"N", std::to_string(N)},
                {"n", std::to_string(n)},
                {"m", std::to_string(m)},
                {"mu", inst.mu.get_str()},
                {"sigma2", inst.sigma2.get_str()},
                {"lambda", inst.lambda.get_str()}};
  out.pair.params = rep.params;
  rep.bound = bound8(N, n, m);
  if (!binhat_params(inst.mu, inst.sigma2).defined()) {
    out.binhat_undefined = true;
    rep.note = out.pair.note;
    return out;
  }
  rep.tv_exact = out.pair.tv_exact;
  rep.term_tail = Rational(7, 5) / inst.sigma2;
  rep.term_var_s = Surd(0, rep.bound.radicand());
  rep.holds = rep.tv_exact <= rep.bound;
  rep.slack_ratio = rep.tv_exact.get_d() / rep.bound.to_double();
  rep.valid = out.pair.valid;
  rep.note = out.pair.note;
  out.pair_le_bound8 = out.pair.bound <= rep.bound;
  return out;
}

}  // namespace stein::applications
