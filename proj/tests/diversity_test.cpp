#include <gtest/gtest.h>

#include <random>
#include <set>

#include "divmbest/diversity.hpp"

using namespace divmbest;

namespace {
std::vector<double> vals(const DiversityMeasure& d) { return {d.values().begin(), d.values().end()}; }

Labeling bits(std::initializer_list<int> v) {
  std::vector<std::uint8_t> b;
  for (int x : v) b.push_back(static_cast<std::uint8_t>(x));
  return Labeling(b);
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::state;
}
}  // namespace

TEST(Diversity, HammingValues) {
  EXPECT_EQ(vals(DiversityMeasure::hamming(5)), (std::vector<double>{0, 4, 6, 6, 4, 0}));
  EXPECT_EQ(vals(DiversityMeasure::hamming(1)), (std::vector<double>{0, 0}));
  EXPECT_EQ(DiversityMeasure::hamming(2)(1), 1.0);
  EXPECT_EQ(DiversityMeasure::hamming(3).kind(), DiversityKind::hamming);
}

TEST(Diversity, PowerValues) {
  const auto linear = DiversityMeasure::power(4, 1.0);
  EXPECT_EQ(vals(linear), (std::vector<double>{-4, -2, 0, -2, -4}));
  EXPECT_EQ(linear.kind(), DiversityKind::linear);
  EXPECT_EQ(DiversityMeasure::power(5, 2.0)(2), -1.0);
  EXPECT_EQ(DiversityMeasure::power(5, 2.0).kind(), DiversityKind::power);
}

TEST(Diversity, SquaredPowerIsAffineHamming) {
  for (int M = 1; M <= 10; ++M) {
    const auto sq = DiversityMeasure::power(M, 2.0);
    const auto h = DiversityMeasure::hamming(M);
    for (int m = 0; m <= M; ++m) EXPECT_EQ(sq(m), 4 * h(m) - double(M) * M) << M << " " << m;
  }
}

TEST(Diversity, RejectsBadParameters) {
  EXPECT_EQ(code_of([] { DiversityMeasure::hamming(0); }), ErrorCode::invalid_input);
  EXPECT_EQ(code_of([] { DiversityMeasure::power(3, 0.5); }), ErrorCode::invalid_input);
  EXPECT_EQ(code_of([] { DiversityMeasure::custom({1.0}); }), ErrorCode::invalid_input);
}

TEST(Concavity, Certificates) {
  EXPECT_TRUE(check_concave(DiversityMeasure::hamming(5)).is_concave);
  for (double p : {1.0, 1.5, 2.0, 3.0}) EXPECT_TRUE(check_concave(DiversityMeasure::power(7, p)).is_concave);
  const std::vector<double> convex{0, 1, 3};
  const auto cert = check_concave(convex);
  EXPECT_FALSE(cert.is_concave);
  ASSERT_TRUE(cert.violating_pair);
  EXPECT_EQ(*cert.violating_pair, std::make_pair(1, 2));
  const std::vector<double> flat{2, 2, 2, 2};
  EXPECT_TRUE(check_concave(flat).is_concave);
  EXPECT_FALSE(DiversityMeasure::custom(convex).concave_certified());
}

TEST(GammaSchedule, HammingIsUniform) {
  EXPECT_EQ(gamma_schedule(DiversityMeasure::hamming(5), 1.0).gammas,
            (std::vector<double>{4, 2, 0, -2, -4}));
  const auto half = gamma_schedule(DiversityMeasure::hamming(4), 0.5);
  EXPECT_EQ(half.gammas, (std::vector<double>{1.5, 0.5, -0.5, -1.5}));
  for (int M = 2; M <= 10; ++M) {
    for (double lambda : {0.1, 0.7, 1.0, 3.0}) {
      const auto s = gamma_schedule(DiversityMeasure::hamming(M), lambda);
      const auto g = s.fixed_gammas(kDefaultScale);
      for (int m = 1; m <= M; ++m) {
        EXPECT_NEAR(s.gammas[m - 1], lambda * (M - 2 * m + 1), 1e-12);
        EXPECT_EQ(g[m - 1], to_fixed(lambda * (M - 2 * m + 1), kDefaultScale));
        EXPECT_EQ(-g[m - 1], g[M - m]);  // symmetry
        if (m > 1) EXPECT_EQ(g[m - 2] - g[m - 1], to_fixed(2 * lambda, kDefaultScale));
      }
    }
  }
}

TEST(GammaSchedule, LinearHasAtMostThreeValues) {
  EXPECT_EQ(gamma_schedule(DiversityMeasure::power(4, 1.0), 1.0).gammas,
            (std::vector<double>{2, 2, -2, -2}));
  EXPECT_EQ(gamma_schedule(DiversityMeasure::power(5, 1.0), 1.0).gammas,
            (std::vector<double>{2, 2, 0, -2, -2}));
  for (int M = 1; M <= 12; ++M) {
    const auto g = gamma_schedule(DiversityMeasure::power(M, 1.0), 0.3).fixed_gammas(kDefaultScale);
    EXPECT_LE(std::set<Cost>(g.begin(), g.end()).size(), 3u);
  }
}

TEST(GammaSchedule, MonotoneAndConsistentFixedTable) {
  for (int M = 1; M <= 10; ++M) {
    for (double p : {1.0, 1.3, 2.0, 2.5}) {
      const auto s = gamma_schedule(DiversityMeasure::power(M, p), 0.37);
      const auto g = s.fixed_gammas(kDefaultScale);
      for (std::size_t m = 1; m < g.size(); ++m) EXPECT_LE(g[m], g[m - 1]);
      const auto table = s.fixed_weighted_diversity(kDefaultScale);
      ASSERT_EQ(table.size(), static_cast<std::size_t>(M) + 1);
      for (int m = 0; m <= M; ++m) {
        // Prefix sums drift by at most half a unit per level.
        EXPECT_LE(std::abs(table[m] - to_fixed(0.37 * DiversityMeasure::power(M, p)(m), kDefaultScale)),
                  m + 1);
      }
    }
  }
}

TEST(GammaSchedule, Refusals) {
  EXPECT_EQ(code_of([] { gamma_schedule(DiversityMeasure::hamming(3), 0.0); }),
            ErrorCode::invalid_input);
  EXPECT_EQ(code_of([] { gamma_schedule(DiversityMeasure::hamming(3), -1.0); }),
            ErrorCode::invalid_input);
  EXPECT_EQ(code_of([] { gamma_schedule(DiversityMeasure::custom({0, 1, 3}), 1.0); }),
            ErrorCode::not_concave);
}

TEST(TupleDiversity, Examples) {
  const auto h2 = DiversityMeasure::hamming(2);
  const LabelingTuple a{bits({0, 0}), bits({1, 1})};
  EXPECT_EQ(zero_counts(a), (std::vector<int>{1, 1}));
  EXPECT_EQ(diversity_of_tuple(h2, a), 2.0);
  const LabelingTuple same{bits({0, 1}), bits({0, 1})};
  EXPECT_EQ(diversity_of_tuple(h2, same), 0.0);
  const LabelingTuple one{bits({0}), bits({0}), bits({1})};
  EXPECT_EQ(diversity_of_tuple(DiversityMeasure::hamming(3), one), 2.0);
  EXPECT_THROW(diversity_of_tuple(DiversityMeasure::hamming(3), a), Error);
}

TEST(TupleDiversity, HammingEqualsPairwiseDistances) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int M = 1 + trial % 6;
    const int n = 1 + trial % 5;
    LabelingTuple t;
    for (int m = 0; m < M; ++m) {
      Labeling y(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) y.set(v, rng() & 1u);
      t.push_back(y);
    }
    double pairwise = 0;
    for (int i = 0; i < M; ++i)
      for (int j = i + 1; j < M; ++j)
        for (int v = 0; v < n; ++v) pairwise += t[i][v] != t[j][v];
    EXPECT_EQ(diversity_of_tuple(DiversityMeasure::hamming(M), t), pairwise);
  }
}
