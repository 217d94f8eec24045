#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "stein/distributions.hpp"

namespace stein {
namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

std::vector<Rational> probs(const ExactDist& d) {
  return {d.probs().begin(), d.probs().end()};
}

TEST(ExactDistTest, TrimsZerosAndRejectsBadMass) {
  const ExactDist d(3, {0, q(1, 2), q(1, 2), 0});
  EXPECT_EQ(d.lo(), 4);
  EXPECT_EQ(d.hi(), 5);
  EXPECT_EQ(d.pmf(3), 0);
  EXPECT_THROW(ExactDist(0, {q(1, 2)}), std::domain_error);
  EXPECT_THROW(ExactDist(0, {q(3, 2), q(-1, 2)}), std::domain_error);
  EXPECT_THROW(ExactDist(0, {}), std::domain_error);
}

TEST(CatalanTest, KnownValues) {
  EXPECT_EQ(catalan(0), 1);
  EXPECT_EQ(catalan(3), 5);
  EXPECT_EQ(catalan(10), 16796);
  // (1/(n+1)) C(2n, n) through the multiplicative binomial oracle.
  for (long n = 0; n <= 40; ++n) {
    EXPECT_EQ(Rational(catalan(n)), oracle::binom(2 * n, n) / (n + 1));
  }
}

TEST(NarayanaNumberTest, ValuesAndDomain) {
  EXPECT_EQ(narayana_number(3, 2), 3);
  EXPECT_EQ(narayana_number(4, 2), 6);
  for (long n = 1; n <= 20; ++n) EXPECT_EQ(narayana_number(n, 1), 1);
  EXPECT_THROW(narayana_number(4, 0), std::domain_error);
  EXPECT_THROW(narayana_number(4, 5), std::domain_error);
}

TEST(NarayanaNumberTest, RowSumsAreCatalan) {
  for (long n = 1; n <= 60; ++n) {
    Integer row = 0;
    for (long k = 1; k <= n; ++k) row += narayana_number(n, k);
    EXPECT_EQ(row, catalan(n)) << "n=" << n;
  }
}

TEST(NarayanaDistTest, SmallCases) {
  const ExactDist d3 = narayana_dist(3);
  EXPECT_EQ(d3.offset(), 1);
  EXPECT_EQ(probs(d3), (std::vector<Rational>{q(1, 5), q(3, 5), q(1, 5)}));
  EXPECT_EQ(narayana_dist(1), ExactDist::point_mass(1));
  EXPECT_EQ(probs(narayana_dist(4)),
            (std::vector<Rational>{q(1, 14), q(6, 14), q(6, 14), q(1, 14)}));
}

TEST(NarayanaDistTest, SymmetricAndMomentsMatchClosedForm) {
  for (long n = 2; n <= 100; ++n) {
    const ExactDist d = narayana_dist(n);
    for (long k = 1; k <= n; ++k) ASSERT_EQ(d.pmf(k), d.pmf(n + 1 - k));
    const auto [mu, s2] = narayana_mean_var(n);
    ASSERT_EQ(d.mean(), mu) << n;
    ASSERT_EQ(d.variance(), s2) << n;
  }
}

TEST(NarayanaMeanVarTest, Values) {
  EXPECT_EQ(narayana_mean_var(3).mean, 2);
  EXPECT_EQ(narayana_mean_var(3).variance, q(2, 5));
  EXPECT_EQ(narayana_mean_var(2).mean, q(3, 2));
  EXPECT_EQ(narayana_mean_var(2).variance, q(1, 4));
  EXPECT_EQ(narayana_mean_var(5).mean, 3);
  EXPECT_EQ(narayana_mean_var(5).variance, q(2, 3));
  EXPECT_THROW(narayana_mean_var(1), std::domain_error);
}

TEST(PoissonBinomialTest, SmallCases) {
  const std::vector<Rational> fair{q(1, 2), q(1, 2)};
  EXPECT_EQ(poisson_binomial_dist(fair), ExactDist(0, {q(1, 4), q(1, 2), q(1, 4)}));
  const std::vector<Rational> degenerate{q(1), q(0)};
  EXPECT_EQ(poisson_binomial_dist(degenerate), ExactDist::point_mass(1));
  const std::vector<Rational> quarter{q(1, 4), q(1, 4)};
  EXPECT_EQ(poisson_binomial_dist(quarter),
            ExactDist(0, {q(9, 16), q(6, 16), q(1, 16)}));
  const std::vector<Rational> bad{q(2)};
  EXPECT_THROW(poisson_binomial_dist(bad), std::domain_error);
}

TEST(PoissonBinomialTest, MatchesEnumerationAndIsPermutationInvariant) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = oracle::random_probabilities(rng, 1 + rng() % 10);
    const ExactDist d = poisson_binomial_dist(p);
    for (const auto& [k, prob] : oracle::enumerate_pb(p)) EXPECT_EQ(d.pmf(k), prob);
    Rational mu = 0, var = 0;
    for (const auto& pi : p) {
      mu += pi;
      var += pi * (1 - pi);
    }
    EXPECT_EQ(d.mean(), mu);
    EXPECT_EQ(d.variance(), var);
    std::shuffle(p.begin(), p.end(), rng);
    EXPECT_EQ(poisson_binomial_dist(p), d);
  }
}

TEST(HypergeometricTest, SmallCasesAndMoments) {
  EXPECT_EQ(hypergeometric_dist(4, 2, 2), ExactDist(0, {q(1, 6), q(4, 6), q(1, 6)}));
  EXPECT_EQ(hypergeometric_dist(9, 4, 9), ExactDist::point_mass(4));
  EXPECT_EQ(hypergeometric_dist(6, 3, 3),
            ExactDist(0, {q(1, 20), q(9, 20), q(9, 20), q(1, 20)}));
  EXPECT_THROW(hypergeometric_dist(4, 5, 1), std::domain_error);
  EXPECT_THROW(hypergeometric_dist(0, 0, 0), std::domain_error);
  for (long N = 2; N <= 15; ++N) {
    for (long n = 0; n <= N; ++n) {
      for (long m = 0; m <= N; ++m) {
        const ExactDist d = hypergeometric_dist(N, n, m);
        EXPECT_EQ(d.mean(), q(n * m, N));
        EXPECT_EQ(d.variance(), q(m * n * (N - m) * (N - n), (N - 1) * N * N));
      }
    }
  }
}

TEST(BinHatTest, ParamsExamples) {
  const BinHatParams a = binhat_params(2, q(2, 5));
  EXPECT_EQ(a.n_hat, 2);
  EXPECT_EQ(a.delta, q(2, 5));
  EXPECT_EQ(a.t, 0);
  EXPECT_EQ(a.shift, 1);

  const BinHatParams b = binhat_params(q(3, 2), q(1, 4));
  EXPECT_EQ(b.n_hat, 1);
  EXPECT_EQ(b.delta, 0);
  EXPECT_EQ(b.t, 0);
  EXPECT_EQ(b.shift, 1);

  for (long n = 2; n <= 40; n += 2) {
    const BinHatParams c = binhat_params(q(n, 2), q(n, 4));
    EXPECT_EQ(c.delta, 0);
    EXPECT_EQ(c.t, 0);
    EXPECT_EQ(c.shift, 0);
    EXPECT_EQ(c.n_hat, n);
  }
  EXPECT_THROW(binhat_params(1, 0), std::domain_error);
  EXPECT_THROW(binhat_params(1, q(-1, 3)), std::domain_error);
}

TEST(BinHatTest, DistExamples) {
  EXPECT_EQ(binhat_dist(binhat_params(2, q(2, 5))),
            ExactDist(1, {q(1, 4), q(1, 2), q(1, 4)}));
  EXPECT_EQ(binhat_dist(binhat_params(1, q(1, 2))),
            ExactDist(0, {q(1, 4), q(1, 2), q(1, 4)}));
  EXPECT_EQ(binhat_dist(binhat_params(q(3, 2), q(1, 4))),
            ExactDist(1, {q(1, 2), q(1, 2)}));
}

TEST(BinHatTest, InvariantsOverRandomInputs) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const Rational mu = q(static_cast<long>(rng() % 401) - 200,
                          static_cast<long>(rng() % 13) + 1);
    const Rational s2 = q(static_cast<long>(rng() % 400) + 1,
                          static_cast<long>(rng() % 17) + 1);
    const BinHatParams p = binhat_params(mu, s2);
    EXPECT_EQ(Rational(p.n_hat), 4 * s2 + p.delta);
    EXPECT_EQ(Rational(p.n_hat), Rational(ceil(Rational(4 * s2))));
    EXPECT_GE(p.delta, 0);
    EXPECT_LT(p.delta, 1);
    EXPECT_GE(p.t * p.n_hat, 0);
    EXPECT_LT(p.t * p.n_hat, 1);
    EXPECT_EQ(Rational(p.shift), mu - p.n_hat * (q(1, 2) - p.t));

    const ExactDist d = binhat_dist(p);
    EXPECT_EQ(d.mean(), mu);
    const Rational var = d.variance();
    EXPECT_GE(var, s2 - 1 / (4 * s2));
    EXPECT_LE(var, s2 + q(1, 4));
    // Binomial pmf via the multiplicative oracle.
    const Rational succ = q(1, 2) - p.t;
    for (long j = 0; j <= p.n_hat; j += std::max(1L, p.n_hat / 5)) {
      EXPECT_EQ(d.pmf(p.shift + j), oracle::binom(p.n_hat, j) * pow(succ, j) *
                                        pow(Rational(1 - succ), p.n_hat - j));
    }
  }
}

TEST(TranslatedPoissonTest, ConventionAndTruncation) {
  const FloatDist a = translated_poisson_dist(5, 5);
  EXPECT_EQ(a.offset, 0);
  EXPECT_NEAR(a.probs[0], std::exp(-5.0), 1e-15);
  EXPECT_NEAR(a.probs[5], std::exp(-5.0) * 3125.0 / 120.0, 1e-14);
  EXPECT_LT(a.omitted_mass, 1e-12);

  // mu - sigma2 = 8/5: Poisson(2/5 + 3/5) shifted by 1.
  const FloatDist b = translated_poisson_dist(2, q(2, 5));
  EXPECT_EQ(b.offset, 1);
  EXPECT_NEAR(b.probs[0], std::exp(-1.0), 1e-15);
  double total = 0, mean = 0;
  for (size_t k = 0; k < b.probs.size(); ++k) {
    total += b.probs[k];
    mean += b.probs[k] * static_cast<double>(b.offset + static_cast<long>(k));
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(mean, 2.0, 1e-11);
  EXPECT_LT(b.omitted_mass, 1e-12);

  const FloatDist c = translated_poisson_dist(0, q(400), 1e-10);
  EXPECT_LT(c.omitted_mass, 1e-10);
  EXPECT_THROW(translated_poisson_dist(0, 0), std::domain_error);
  EXPECT_THROW(translated_poisson_dist(0, 1, 1e-3), std::domain_error);
}

TEST(RawMomentsTest, Examples) {
  const MomentSet m = raw_moments(narayana_dist(3), 4);
  EXPECT_EQ(m.m1, 2);
  EXPECT_EQ(m.m2, q(22, 5));
  EXPECT_EQ(m.m3, q(52, 5));
  EXPECT_EQ(m.m4, 26);
  const MomentSet pm = raw_moments(ExactDist::point_mass(-3), 4);
  EXPECT_EQ(pm, (MomentSet{-3, 9, -27, 81}));
  const MomentSet fair = raw_moments(binhat_dist(binhat_params(1, q(1, 2))), 2);
  EXPECT_EQ(fair.m1, 1);
  EXPECT_EQ(fair.m2, q(3, 2));
  EXPECT_EQ(fair.m3, 0);
  EXPECT_THROW(raw_moments(ExactDist::point_mass(0), 5), std::domain_error);
}

TEST(MomentSetTest, CauchySchwarz) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const MomentSet m = raw_moments(oracle::random_law(rng, -5, 1 + rng() % 10));
    EXPECT_GE(m.m2, m.m1 * m.m1);
    EXPECT_GE(m.m4, m.m2 * m.m2);
  }
}

}  // namespace
}  // namespace stein
