#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "corrtest/detect.hpp"

using namespace corrtest;

namespace {

BinaryGraph graph_from_mask(int n, std::uint64_t mask) {
  return BinaryGraph::from_predicate(n, [&](std::size_t idx) { return ((mask >> idx) & 1U) != 0; });
}

double er_null_probability(const BinaryGraph& a, const BinaryGraph& b, double q) {
  const double m = static_cast<double>(a.pair_slots());
  const double ea = static_cast<double>(a.edge_count());
  const double eb = static_cast<double>(b.edge_count());
  return std::pow(q, ea + eb) * std::pow(1 - q, 2 * m - ea - eb);
}

template <ObservationGraph G>
double brute_force_qap(const G& a, const G& b) {
  std::vector<int> m(static_cast<std::size_t>(a.size()));
  std::iota(m.begin(), m.end(), 0);
  double best = -1e300;
  do best = std::max(best, statistic_given_pi(a, b, Permutation(m)));
  while (std::next_permutation(m.begin(), m.end()));
  return best;
}

}  // namespace

TEST(Kernel, ErValuesAndNormalization) {
  const double p = 0.3, s = 0.6, q = p * s;
  EXPECT_DOUBLE_EQ(kernel_er(true, true, p, s), 1 / p);
  EXPECT_DOUBLE_EQ(kernel_er(true, false, p, s), (1 - s) / (1 - q));
  EXPECT_DOUBLE_EQ(kernel_er(false, false, p, s), (1 - 2 * q + p * s * s) / ((1 - q) * (1 - q)));
  // Q-weighted kernel reproduces the planted cell masses.
  const double p11 = p * s * s, p10 = p * s * (1 - s), p00 = 1 - 2 * p * s + p * s * s;
  EXPECT_NEAR(q * q * kernel_er(true, true, p, s), p11, 1e-15);
  EXPECT_NEAR(q * (1 - q) * kernel_er(false, true, p, s), p10, 1e-15);
  EXPECT_NEAR((1 - q) * (1 - q) * kernel_er(false, false, p, s), p00, 1e-15);
  EXPECT_THROW(kernel_er(true, true, 1.0, 0.5), DomainError);
}

TEST(Kernel, ErAtZeroSamplingIsOneOnTheSupport) {
  EXPECT_DOUBLE_EQ(kernel_er(false, false, 0.4, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(kernel_er(true, false, 0.4, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(kernel_er(false, true, 0.4, 0.0), 1.0);
}

TEST(Kernel, MehlerMatchesBivariateNormalDensityRatio) {
  const double rho = 0.7;
  for (double a : {-1.5, 0.0, 0.4, 2.0})
    for (double b : {-0.3, 0.0, 1.1}) {
      const double det = 1 - rho * rho;
      const double joint = std::exp(-(a * a - 2 * rho * a * b + b * b) / (2 * det)) / (2 * M_PI * std::sqrt(det));
      const double product = std::exp(-(a * a + b * b) / 2) / (2 * M_PI);
      EXPECT_NEAR(kernel_gaussian(a, b, rho), joint / product, 1e-12);
    }
  EXPECT_THROW(kernel_gaussian(0, 0, 1.0), DomainError);
}

TEST(LikelihoodRatio, NullExpectationIsOne) {
  // E_Q[L] = 1, summed exactly over every pair of graphs on 3 nodes.
  const int n = 3;
  const ErModel model{0.4, 0.7};
  const double q = model.p * model.s;
  double total = 0.0;
  for (std::uint64_t ma = 0; ma < 8; ++ma)
    for (std::uint64_t mb = 0; mb < 8; ++mb) {
      const auto a = graph_from_mask(n, ma);
      const auto b = graph_from_mask(n, mb);
      total += er_null_probability(a, b, q) * likelihood_ratio_exact(a, b, model);
    }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(LikelihoodRatio, InvariantUnderRelabelling) {
  const ErModel model{0.3, 0.8};
  const auto x = sample_planted_er(ErParams{6, 0.3, 0.8}, SeedSpec{5, 1});
  const auto sigma = Permutation::from_cycles(6, {{1, 4, 2}, {3, 6}});
  EXPECT_NEAR(log_likelihood_ratio_exact(x.a, x.b, model), log_likelihood_ratio_exact(x.a, relabel(x.b, sigma), model),
              1e-9);
  EXPECT_THROW(log_likelihood_ratio_exact(BinaryGraph(8), BinaryGraph(8), model), LimitError);
}

TEST(Qap, ExactMatchesBruteForce) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto x = sample_null_er(ErParams{6, 0.5, 0.8}, SeedSpec{1, t});
    const auto r = qap_exact(x.a, x.b);
    EXPECT_DOUBLE_EQ(r.value, brute_force_qap(x.a, x.b));
    EXPECT_DOUBLE_EQ(statistic_given_pi(x.a, x.b, r.pi), r.value);
    const auto g = sample_null_gaussian(GaussianParams{5, 0.5}, SeedSpec{2, t});
    EXPECT_NEAR(qap_exact(g.a, g.b).value, brute_force_qap(g.a, g.b), 1e-12);
  }
  EXPECT_THROW(qap_exact(BinaryGraph(11), BinaryGraph(11)), LimitError);
}

TEST(Qap, StatisticIsIntersectionSize) {
  const auto x = sample_planted_er(ErParams{9, 0.5, 0.7}, SeedSpec{4, 0});
  EXPECT_DOUBLE_EQ(statistic_given_pi(x.a, x.b, x.pi), total_weight(intersect(x.a, relabel(x.b, x.pi))));
}

TEST(Qap, LocalSearchRecoversIdenticalGraphs) {
  for (std::uint64_t t = 0; t < 5; ++t) {
    const auto x = sample_planted_er(ErParams{30, 0.2, 1.0}, SeedSpec{6, t});
    const auto r = qap_local_search(x.a, x.b, SeedSpec{6, t});
    EXPECT_DOUBLE_EQ(r.value, static_cast<double>(x.a.edge_count()));
  }
}

TEST(Qap, LocalSearchNeverBeatsExactAndIsDeterministic) {
  for (std::uint64_t t = 0; t < 10; ++t) {
    const auto x = sample_null_er(ErParams{7, 0.5, 0.9}, SeedSpec{3, t});
    const auto ls = qap_local_search(x.a, x.b, SeedSpec{3, t});
    EXPECT_LE(ls.value, qap_exact(x.a, x.b).value);
    EXPECT_EQ(ls.pi, qap_local_search(x.a, x.b, SeedSpec{3, t}).pi);
  }
}

TEST(Thresholds, ClosedForms) {
  EXPECT_NEAR(threshold_gaussian(100, 0.5), 0.5 * 4950 - std::pow(100.0, 1.1), 1e-9);
  const double mean = 4950 * 0.2 * 0.25;
  EXPECT_NEAR(threshold_er(100, 0.2, 0.5), mean * (1 - std::pow(mean, -0.4)), 1e-9);
  EXPECT_THROW(threshold_er(3, 0.1, 0.1), DomainError);
}

TEST(EdgeCountTest, ThresholdIsDensityCrossing) {
  const int n = 50;
  const double p = 0.2, s = 0.6;
  const auto [v0, v1] = edge_difference_variances(n, p, s);
  const double x = edge_count_threshold(n, p, s);
  auto density = [](double x, double v) { return std::exp(-x * x / (2 * v)) / std::sqrt(v); };
  EXPECT_NEAR(density(x, v0), density(x, v1), 1e-12 * density(x, v0));
  EXPECT_GT(v0, v1);
}

TEST(EdgeCountTest, DeclaresPlantedForIdenticalCounts) {
  const auto x = sample_planted_er(ErParams{20, 0.3, 1.0}, SeedSpec{1, 0});
  const auto t = edge_count_test(x.a, x.b, ErParams{20, 0.3, 1.0});
  EXPECT_EQ(t.direction, Direction::Below);
  EXPECT_EQ(t.decision, Decision::Planted);
}
