#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "ice/schur.hpp"

using namespace ice;

namespace {

std::vector<Partition> grid(std::size_t max_n, int max_part) {
  std::vector<Partition> out;
  for (std::size_t n = 1; n <= max_n; ++n)
    for (const auto& p : partitions_in_box(n, max_part)) out.push_back(p);
  return out;
}

// Images for a rank-n polynomial with every t_i replaced by the constant c.
std::vector<Polynomial> t_specialized(std::size_t n, long c) {
  auto images = identity_images(n);
  for (std::size_t i = 0; i < n; ++i) images[n + i] = VarSpace{n}.constant(c);
  return images;
}

}  // namespace

TEST(Schur, SmallCases) {
  VarSpace vs{2};
  EXPECT_EQ(schur_bialternant(Partition({1, 0})), vs.z(1) + vs.z(2));
  EXPECT_EQ(schur_pattern_sum(Partition({1, 0})), vs.z(1) + vs.z(2));
  EXPECT_EQ(schur_bialternant(Partition({0, 0, 0})), VarSpace{3}.one());
  EXPECT_EQ(schur_bialternant(Partition({0})), VarSpace{1}.one());
}

TEST(Schur, ValueAtOnesCountsPatterns) {
  Partition l({3, 1, 0});
  std::size_t patterns = for_each_gt_pattern(l.parts(), false, [](const GTPattern&) {});
  EXPECT_EQ(patterns, 15u);
  Point ones{{1, 1, 1}, {0, 0, 0}};
  EXPECT_EQ(eval(schur_bialternant(l), ones), GaussianRational(15));
}

TEST(Schur, BialternantMatchesPatternSum) {
  for (const auto& p : grid(4, 4)) {
    Polynomial s = schur_bialternant(p);
    EXPECT_EQ(s, schur_pattern_sum(p)) << p.to_string();
    EXPECT_EQ(vandermonde(p.n()) * s, alternant(p.shifted())) << p.to_string();
  }
}

TEST(Schur, SymmetricAndTFree) {
  for (const auto& p : partitions_in_box(3, 3)) {
    Polynomial s = schur_bialternant(p);
    EXPECT_TRUE(s.t_free());
    std::vector<std::size_t> sigma{0, 1, 2};
    do {
      EXPECT_EQ(permute_rank_variables(s, sigma), s) << p.to_string();
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
}

// s_(lambda,0)(z_1..z_n, 0) = s_lambda(z_1..z_n).
TEST(Schur, StableUnderAppendingZero) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-9, 9);
  for (const auto& p : partitions_in_box(3, 3)) {
    std::vector<int> longer = p.parts();
    longer.push_back(0);
    Point x{{d(rng), d(rng), d(rng)}, {0, 0, 0}};
    Point x0{{x.z[0], x.z[1], x.z[2], 0}, {0, 0, 0, 0}};
    EXPECT_EQ(eval(schur_bialternant(Partition(longer)), x0), eval(schur_bialternant(p), x)) << p.to_string();
  }
}

TEST(Denominator, Examples) {
  EXPECT_EQ(deformed_denominator(IceKind::Gamma, 1), VarSpace{1}.one());
  EXPECT_EQ(deformed_denominator(IceKind::Delta, 1), VarSpace{1}.one());
  VarSpace vs{2};
  EXPECT_EQ(deformed_denominator(IceKind::Gamma, 2), vs.t(1) * vs.z(2) + vs.z(1));
  EXPECT_EQ(deformed_denominator(IceKind::Delta, 2), vs.t(2) * vs.z(2) + vs.z(1));
}

TEST(Denominator, MinusOneGivesVandermonde) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (IceKind kind : {IceKind::Gamma, IceKind::Delta}) {
      Polynomial at = substitute(deformed_denominator(kind, n), t_specialized(n, -1));
      EXPECT_EQ(at, vandermonde(n)) << n;
    }
}

TEST(Denominator, FactorwiseProduct) {
  Polynomial z = partition_function(IceKind::Gamma, Partition({2, 1, 0}));
  for (IceKind kind : {IceKind::Gamma, IceKind::Delta})
    EXPECT_EQ(times_deformed_denominator(kind, z), deformed_denominator(kind, 3) * z);
}

TEST(IceQuotient, Values) {
  EXPECT_EQ(s_gamma(Partition({0, 0})), VarSpace{2}.one());
  Partition l({3, 1, 0});
  EXPECT_EQ(s_gamma(l), schur_bialternant(l));
  EXPECT_EQ(s_delta(l), schur_pattern_sum(l));
}

TEST(IceQuotient, Identities) {
  for (const auto& p : grid(3, 3)) {
    Polynomial s = schur_bialternant(p);
    EXPECT_EQ(partition_function(IceKind::Gamma, p), deformed_denominator(IceKind::Gamma, p.n()) * s);
    EXPECT_EQ(partition_function(IceKind::Delta, p), deformed_denominator(IceKind::Delta, p.n()) * s);
  }
}

TEST(Tokuyama, SingleT) {
  for (const auto& p : grid(3, 3)) {
    Polynomial single = tokuyama_sum(p, false);
    EXPECT_EQ(single, tokuyama_denominator(p.n()) * schur_bialternant(p)) << p.to_string();
    EXPECT_EQ(substitute(single, t_specialized(p.n(), -1)), alternant(p.shifted())) << p.to_string();
  }
}
