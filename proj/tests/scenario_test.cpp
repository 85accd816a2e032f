#include "bellrobust/scenario.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace bellrobust {
namespace {

const Scenario kChsh = Scenario::binary_input(2, 2);

TEST(Scenario, RejectsZeroFields) {
  EXPECT_THROW(Scenario(0, 2, 2, 2), RangeError);
  EXPECT_THROW(Scenario(2, 2, 2, 0), RangeError);
}

TEST(Scenario, Sizes) {
  EXPECT_EQ(kChsh.behavior_size(), 16u);
  EXPECT_EQ(kChsh.strategy_count(), 16u);
  EXPECT_EQ(Scenario(3, 2, 2, 3).strategy_count(), 8u * 9u);
  EXPECT_THROW(Scenario::binary_input(100, 100).strategy_count(), SizeError);
  EXPECT_THROW(Scenario::binary_input(3, 3).strategy_count(80), SizeError);
  EXPECT_EQ(Scenario::binary_input(3, 3).strategy_count(81), 81u);
}

TEST(FlatIndex, Examples) {
  EXPECT_EQ(flat_index(kChsh, 0, 0, 0, 0), 0u);
  EXPECT_EQ(flat_index(kChsh, 1, 1, 1, 1), 15u);
  EXPECT_EQ(flat_index(kChsh, 0, 1, 1, 0), 6u);
  EXPECT_THROW(flat_index(kChsh, 2, 0, 0, 0), RangeError);
  EXPECT_THROW(flat_index(kChsh, 0, 0, -1, 0), RangeError);
}

TEST(FlatIndex, Bijection) {
  for (const Scenario& s :
       {kChsh, Scenario(3, 2, 2, 4), Scenario(2, 3, 3, 1)}) {
    std::set<std::size_t> seen;
    for (int x = 0; x < s.settings_a; ++x)
      for (int y = 0; y < s.settings_b; ++y)
        for (int a = 0; a < s.outcomes_a; ++a)
          for (int b = 0; b < s.outcomes_b; ++b) {
            const std::size_t i = flat_index(s, x, y, a, b);
            EXPECT_LT(i, s.behavior_size());
            seen.insert(i);
          }
    EXPECT_EQ(seen.size(), s.behavior_size());
  }
}

TEST(Strategies, CountsAndOrder) {
  EXPECT_EQ(enumerate_deterministic_strategies(kChsh).size(), 16u);
  EXPECT_EQ(enumerate_deterministic_strategies(Scenario::binary_input(3, 3)).size(), 81u);
  EXPECT_EQ(enumerate_deterministic_strategies(Scenario::binary_input(8, 8)).size(), 4096u);

  const auto all = enumerate_deterministic_strategies(kChsh);
  EXPECT_EQ(all.front(), (DeterministicStrategy{{0, 0}, {0, 0}}));
  EXPECT_EQ(all[1], (DeterministicStrategy{{0, 0}, {0, 1}}));
  EXPECT_EQ(all[4], (DeterministicStrategy{{0, 1}, {0, 0}}));
  EXPECT_EQ(all.back(), (DeterministicStrategy{{1, 1}, {1, 1}}));
  EXPECT_THROW(strategy_at(kChsh, 16), RangeError);
}

TEST(VertexBehavior, Examples) {
  const Behavior zero = vertex_behavior({{0, 0}, {0, 0}}, kChsh);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      EXPECT_EQ(zero(x, y, 0, 0), 1.0);
      EXPECT_EQ(zero.block(x, y).sum(), 1.0);
    }
  const Behavior v = vertex_behavior({{0, 1}, {0, 0}}, kChsh);
  EXPECT_EQ(v(1, 0, 0, 0), 0.0);
  EXPECT_EQ(v(1, 0, 1, 0), 1.0);
  EXPECT_EQ(v(1, 0, 0, 1), 0.0);
  EXPECT_EQ(v(1, 0, 1, 1), 0.0);
  EXPECT_THROW(vertex_behavior({{0}, {0, 0}}, kChsh), ShapeError);
}

TEST(LocalMatrix, Shapes) {
  const Matrix g = local_matrix(kChsh);
  EXPECT_EQ(g.rows(), 16);
  EXPECT_EQ(g.cols(), 16);
  EXPECT_TRUE((g.colwise().sum().array() == 4.0).all());
  const Matrix g3 = local_matrix(Scenario::binary_input(3, 3));
  EXPECT_EQ(g3.rows(), 36);
  EXPECT_EQ(g3.cols(), 81);
  EXPECT_TRUE((g3.colwise().sum().array() == 4.0).all());
  for (int d = 2; d <= 5; ++d) {
    const Matrix gd = local_matrix(Scenario::binary_input(d, d));
    EXPECT_EQ(gd.rows(), 4 * d * d);
    EXPECT_EQ(gd.cols(), d * d * d * d);
  }
  EXPECT_THROW(local_matrix(Scenario::binary_input(4, 4), 100), SizeError);
}

TEST(LocalMatrix, ColumnsAreVertices) {
  const Scenario s(3, 2, 2, 3);
  const Matrix g = local_matrix(s);
  const auto strategies = enumerate_deterministic_strategies(s);
  for (std::size_t j = 0; j < strategies.size(); ++j) {
    const Behavior v = vertex_behavior(strategies[j], s);
    EXPECT_EQ(g.col(static_cast<Eigen::Index>(j)), v.values);
    EXPECT_TRUE(validate_behavior(v, 0.0).ok());
  }
}

TEST(NoSignalingMatrix, ShapeAndAnnihilation) {
  EXPECT_EQ(nosignaling_matrix(kChsh).rows(), 8);
  EXPECT_EQ(nosignaling_matrix(kChsh).cols(), 16);
  EXPECT_EQ(nosignaling_matrix(Scenario::binary_input(3, 4)).rows(), 2 * (3 + 4));
  for (const Scenario& s : {kChsh, Scenario::binary_input(3, 3),
                            Scenario(3, 2, 2, 3), Scenario(3, 3, 2, 2)}) {
    const Matrix product = nosignaling_matrix(s) * local_matrix(s);
    EXPECT_EQ(product.cwiseAbs().maxCoeff(), 0.0) << s.to_string();
    EXPECT_LT((nosignaling_matrix(s) * uniform_behavior(s).values)
                  .cwiseAbs()
                  .maxCoeff(),
              1e-15);
  }
}

TEST(Uniform, Entries) {
  EXPECT_TRUE((uniform_behavior(kChsh).values.array() == 0.25).all());
  EXPECT_TRUE(
      (uniform_behavior(Scenario::binary_input(3, 3)).values.array() == 1.0 / 9.0).all());
  EXPECT_TRUE(validate_behavior(uniform_behavior(kChsh), 1e-12).ok());
}

TEST(Validate, ReportsPositivity) {
  Behavior p = uniform_behavior(kChsh);
  p(0, 0, 0, 0) = -0.01;
  p(0, 0, 0, 1) = 0.51;
  const auto report = validate_behavior(p, 1e-9);
  ASSERT_FALSE(report.ok());
  bool found = false;
  for (const auto& v : report.violations)
    if (v.kind == Violation::Kind::Positivity) {
      found = true;
      EXPECT_NEAR(v.magnitude, 0.01, 1e-15);
    }
  EXPECT_TRUE(found);
}

TEST(Validate, ReportsSignaling) {
  Behavior p = uniform_behavior(kChsh);
  p.values.segment(0, 4) << 1, 0, 0, 0;
  p.values.segment(4, 4) << 0, 0, 0, 1;
  const auto report = validate_behavior(p, 1e-9);
  ASSERT_FALSE(report.ok());
  bool signaling = false;
  for (const auto& v : report.violations) {
    EXPECT_NE(v.kind, Violation::Kind::Normalization);
    if (v.kind == Violation::Kind::NoSignaling) signaling = true;
  }
  EXPECT_TRUE(signaling);
}

TEST(Validate, ReportsNormalizationAndShape) {
  Behavior p = uniform_behavior(kChsh);
  p.values *= 1.1;
  auto report = validate_behavior(p, 1e-9);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.violations.front().kind, Violation::Kind::Normalization);
  p.values.resize(3);
  report = validate_behavior(p, 1e-9);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations.front().kind, Violation::Kind::Shape);
  EXPECT_THROW(Behavior(kChsh, Vector::Zero(3)), ShapeError);
}

TEST(Validate, ConvexMixturesStayValid) {
  std::mt19937 rng(7);
  const Scenario s = Scenario::binary_input(3, 2);
  const Matrix g = local_matrix(s);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Vector w = Vector::NullaryExpr(g.cols(), [&] { return u(rng); });
    w /= w.sum();
    const Behavior p(s, g * w);
    EXPECT_TRUE(validate_behavior(p, 1e-12).ok());
    const double lambda = u(rng);
    const Behavior q(s, lambda * p.values +
                            (1 - lambda) * uniform_behavior(s).values);
    EXPECT_TRUE(validate_behavior(q, 1e-12).ok());
  }
}

}  // namespace
}  // namespace bellrobust
