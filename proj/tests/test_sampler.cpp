#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "corrtest/sampler.hpp"

using namespace corrtest;

namespace {

struct PairMoments {
  double n11 = 0, n10 = 0, n01 = 0, total = 0;
};

// Joint frequencies of (A_ij, B_pi(i)pi(j)) over all pairs and trials.
template <class Sampler>
PairMoments er_joint(const ErParams& params, int trials, Sampler&& sample) {
  PairMoments m;
  for (int t = 0; t < trials; ++t) {
    const auto x = sample(params, SeedSpec{42, static_cast<std::uint64_t>(t)});
    for (const Edge& e : all_pairs(params.n)) {
      const bool a = x.a.has_edge(e.u, e.v);
      const bool b = x.b.has_edge(x.pi(e.u), x.pi(e.v));
      m.n11 += a && b;
      m.n10 += a && !b;
      m.n01 += !a && b;
      m.total += 1;
    }
  }
  return m;
}

void expect_er_cells(const PairMoments& m, double p, double s) {
  const double cells[3] = {p * s * s, p * s * (1 - s), p * s * (1 - s)};
  const double observed[3] = {m.n11, m.n10, m.n01};
  for (int c = 0; c < 3; ++c) {
    const double sd = std::sqrt(m.total * cells[c] * (1 - cells[c]));
    EXPECT_NEAR(observed[c], m.total * cells[c], 5 * sd) << "cell " << c;
  }
}

}  // namespace

TEST(RhoEr, ClosedFormAndDomain) {
  EXPECT_DOUBLE_EQ(rho_er(0.5, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(rho_er(0.2, 0.0), 0.0);
  EXPECT_NEAR(rho_er(0.2, 0.5), 0.5 * 0.8 / 0.9, 1e-15);
  EXPECT_THROW(rho_er(0.0, 0.5), DomainError);
  EXPECT_THROW(rho_er(0.5, 1.5), DomainError);
}

TEST(Params, ValidationRejectsBadInput) {
  EXPECT_THROW((GaussianParams{3, 1.5}.validate()), DomainError);
  EXPECT_THROW((ErParams{3, 1.0, 0.5}.validate()), DomainError);
  EXPECT_THROW(sample_null_er(ErParams{5, 0.3, -0.1}, SeedSpec{}), DomainError);
}

TEST(Sampler, SameSeedSameSample) {
  const ErParams er{20, 0.3, 0.7};
  const auto x = sample_planted_er(er, SeedSpec{7, 3});
  const auto y = sample_planted_er(er, SeedSpec{7, 3});
  EXPECT_EQ(x.a.edges(), y.a.edges());
  EXPECT_EQ(x.b.edges(), y.b.edges());
  EXPECT_EQ(x.pi, y.pi);
  const auto z = sample_planted_er(er, SeedSpec{7, 4});
  EXPECT_NE(x.a.edges(), z.a.edges());
  const GaussianParams g{10, 0.5};
  EXPECT_EQ(sample_planted_gaussian(g, SeedSpec{1, 1}).b, sample_planted_gaussian(g, SeedSpec{1, 1}).b);
}

TEST(Sampler, NullErMarginalsAndIndependence) {
  const ErParams params{12, 0.4, 0.5};
  PairMoments m;
  for (int t = 0; t < 400; ++t) {
    const auto x = sample_null_er(params, SeedSpec{9, static_cast<std::uint64_t>(t)});
    for (const Edge& e : all_pairs(params.n)) {
      const bool a = x.a.has_edge(e.u, e.v);
      const bool b = x.b.has_edge(e.u, e.v);
      m.n11 += a && b;
      m.n10 += a && !b;
      m.n01 += !a && b;
      m.total += 1;
    }
  }
  const double q = params.edge_prob();
  const double cells[3] = {q * q, q * (1 - q), q * (1 - q)};
  const double observed[3] = {m.n11, m.n10, m.n01};
  for (int c = 0; c < 3; ++c)
    EXPECT_NEAR(observed[c], m.total * cells[c], 5 * std::sqrt(m.total * cells[c] * (1 - cells[c])));
}

TEST(Sampler, PlantedErJointLaw) {
  expect_er_cells(er_joint(ErParams{12, 0.3, 0.6}, 400, sample_planted_er), 0.3, 0.6);
}

TEST(Sampler, ParentSamplerHasSameJointLaw) {
  expect_er_cells(er_joint(ErParams{12, 0.3, 0.6}, 400, sample_planted_er_parent), 0.3, 0.6);
}

TEST(Sampler, ErFullSamplingIsIdentical) {
  const auto x = sample_planted_er(ErParams{15, 0.4, 1.0}, SeedSpec{2, 0});
  EXPECT_EQ(relabel(x.b, x.pi).edges(), x.a.edges());
}

TEST(Sampler, GaussianCorrelationAlongPlantedMatching) {
  const GaussianParams params{14, 0.6};
  double sab = 0, saa = 0, sbb = 0, cnt = 0;
  for (int t = 0; t < 200; ++t) {
    const auto x = sample_planted_gaussian(params, SeedSpec{3, static_cast<std::uint64_t>(t)});
    for (const Edge& e : all_pairs(params.n)) {
      const double a = x.a.weight(e.u, e.v);
      const double b = x.b.weight(x.pi(e.u), x.pi(e.v));
      sab += a * b;
      saa += a * a;
      sbb += b * b;
      cnt += 1;
    }
  }
  EXPECT_NEAR(saa / cnt, 1.0, 0.03);
  EXPECT_NEAR(sbb / cnt, 1.0, 0.03);
  EXPECT_NEAR(sab / cnt, 0.6, 0.03);
}

TEST(Sampler, GaussianNullUncorrelated) {
  const GaussianParams params{14, 0.9};
  double sab = 0, cnt = 0;
  for (int t = 0; t < 200; ++t) {
    const auto x = sample_null_gaussian(params, SeedSpec{4, static_cast<std::uint64_t>(t)});
    for (std::size_t i = 0; i < x.a.pair_slots(); ++i) {
      sab += x.a.pair_weight(i) * x.b.pair_weight(i);
      cnt += 1;
    }
  }
  EXPECT_NEAR(sab / cnt, 0.0, 5 / std::sqrt(cnt));
}

TEST(Sampler, PlantedPermutationIsUniform) {
  std::map<std::vector<int>, int> freq;
  const int trials = 30000;
  for (int t = 0; t < trials; ++t)
    ++freq[sample_planted_er(ErParams{3, 0.5, 0.5}, SeedSpec{8, static_cast<std::uint64_t>(t)}).pi.mapping()];
  ASSERT_EQ(freq.size(), 6u);
  double chi2 = 0.0;
  for (const auto& [perm, c] : freq) chi2 += (c - trials / 6.0) * (c - trials / 6.0) / (trials / 6.0);
  EXPECT_LT(chi2, 20.5);
}
