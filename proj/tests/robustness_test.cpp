#include "bellrobust/robustness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bellrobust/losr.hpp"
#include "bellrobust/quantum.hpp"
#include "sampling.hpp"

namespace bellrobust {
namespace {

const Behavior& tsirelson() {
  static const Behavior p = cglmp_behavior(max_entangled(2), 2);
  return p;
}

TEST(IsLocal, Examples) {
  const Scenario s = Scenario::binary_input(2, 2);
  EXPECT_TRUE(is_local(uniform_behavior(s)));
  for (const auto& st : enumerate_deterministic_strategies(s))
    EXPECT_TRUE(is_local(vertex_behavior(st, s)));
  EXPECT_FALSE(is_local(pr_box()));
  EXPECT_FALSE(is_local(tsirelson()));
}

TEST(Generalized, Examples) {
  EXPECT_EQ(generalized_robustness(uniform_behavior(Scenario::binary_input(2, 2))).r_g, 0.0);
  EXPECT_NEAR(generalized_robustness(tsirelson()).r_g, 0.138071, 1e-6);
  const Behavior p3 = cglmp_behavior(max_entangled(3), 3);
  EXPECT_NEAR(generalized_robustness(p3).r_g, 0.145489, 1e-6);
  EXPECT_NEAR(generalized_robustness(p3).r_g, standard_robustness(p3).r_s, 1e-7);
  EXPECT_NEAR(generalized_robustness(pr_box()).r_g, 1.0 / 3, 1e-9);
}

TEST(Generalized, ExplicitFormAgrees) {
  RobustnessOptions opt;
  opt.cross_check_explicit = true;
  EXPECT_NO_THROW(generalized_robustness(tsirelson(), opt));
  EXPECT_NO_THROW(generalized_robustness(pr_box(), opt));
  EXPECT_NO_THROW(generalized_robustness(cglmp_behavior(max_entangled(3), 3), opt));
}

TEST(Generalized, WitnessReconstructsBehavior) {
  const GeneralizedRobustness g = generalized_robustness(tsirelson());
  const Behavior mixed(tsirelson().scenario,
                       (tsirelson().values + g.r_g * g.noise.values) / (1 + g.r_g));
  EXPECT_LT((mixed.values - local_behavior(g.witness).values).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_TRUE(validate_behavior(g.noise, 1e-8).ok());
}

TEST(Standard, Examples) {
  EXPECT_NEAR(standard_robustness(tsirelson()).r_s, 0.207107, 1e-6);
  EXPECT_NEAR(standard_robustness(pr_box()).r_s, 0.5, 1e-9);
  EXPECT_EQ(standard_robustness(uniform_behavior(Scenario::binary_input(3, 3))).r_s, 0.0);
}

TEST(Standard, LocalNoiseReconstructsBehavior) {
  const StandardRobustness s = standard_robustness(pr_box());
  const Vector lhs = pr_box().values + s.r_s * local_behavior(s.noise).values;
  EXPECT_LT((lhs / (1 + s.r_s) - local_behavior(s.witness).values).cwiseAbs().maxCoeff(),
            1e-9);
}

TEST(WhiteNoise, Examples) {
  EXPECT_EQ(white_noise_robustness(uniform_behavior(Scenario::binary_input(2, 2))).r_w, 0.0);
  EXPECT_NEAR(white_noise_robustness(tsirelson()).r_w, std::sqrt(2.0) - 1, 1e-9);
  EXPECT_NEAR(white_noise_robustness(pr_box()).r_w, 1.0, 1e-9);
}

TEST(ViolationRatio, Examples) {
  EXPECT_NEAR(violation_ratio(uniform_behavior(Scenario::binary_input(2, 2))), 1.0, 1e-12);
  EXPECT_NEAR(violation_ratio(tsirelson()), std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(violation_ratio(pr_box()), 2.0, 1e-9);
}

TEST(Functional, Examples) {
  const Scenario s = Scenario::binary_input(2, 2);
  const BellFunctional zero = make_functional(s, Vector::Zero(16));
  EXPECT_EQ(evaluate_functional(zero, pr_box()), 0.0);
  const BellFunctional chsh = chsh_functional();
  EXPECT_NEAR(evaluate_functional(chsh, pr_box()), 4.0, 1e-12);
  EXPECT_NEAR(chsh.local_bound, 2.0, 1e-12);
  EXPECT_NEAR(testing::max_chsh_value(tsirelson()), 2 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(testing::max_chsh_value(pr_box()), 4.0, 1e-12);
  EXPECT_THROW(make_functional(s, Vector::Zero(3)), ShapeError);
}

TEST(Functional, DualCertificate) {
  for (const Behavior& p : {tsirelson(), pr_box(), cglmp_behavior(max_entangled(3), 3)}) {
    const StandardRobustness s = standard_robustness(p);
    const double ratio =
        std::abs(evaluate_functional(s.functional, p)) / s.functional.local_bound;
    EXPECT_NEAR(ratio, 2 * s.r_s + 1, 1e-6);
  }
}

TEST(Robustness, RejectsInvalidInput) {
  Behavior bad = uniform_behavior(Scenario::binary_input(2, 2));
  bad(0, 0, 0, 0) += 0.1;
  EXPECT_THROW(generalized_robustness(bad), InputError);
  EXPECT_THROW(standard_robustness(bad), InputError);
  EXPECT_THROW(white_noise_robustness(bad), InputError);
  EXPECT_THROW(parse_measure("x"), InputError);
}

TEST(Robustness, StrategyLimit) {
  RobustnessOptions opt;
  opt.max_strategies = 10;
  EXPECT_THROW(standard_robustness(tsirelson(), opt), SizeError);
}

TEST(Robustness, RecordSelection) {
  MeasureSelection only_s{false, true, false};
  const RobustnessRecord r = robustness_record(tsirelson(), only_s);
  EXPECT_FALSE(r.r_w);
  EXPECT_FALSE(r.r_g);
  ASSERT_TRUE(r.get(Measure::Standard));
  EXPECT_NEAR(*r.get(Measure::Standard), 0.207107, 1e-6);
}

TEST(Properties, HierarchyAndFaithfulness) {
  std::mt19937 rng(7);
  for (int i = 0; i < 40; ++i) {
    const Behavior p = testing::random_behavior(rng);
    const RobustnessRecord r = robustness_record(p);
    EXPECT_GE(*r.r_w, *r.r_s - 1e-8);
    EXPECT_GE(*r.r_s, *r.r_g - 1e-8);
    const bool local = is_local(p);
    for (double v : {*r.r_w, *r.r_s, *r.r_g}) EXPECT_EQ(v <= 1e-7, local) << v;
  }
}

TEST(Properties, Convexity) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 20; ++i) {
    Behavior p = testing::random_behavior(rng), q = testing::random_behavior(rng);
    while (!(q.scenario == p.scenario)) q = testing::random_behavior(rng);
    const double t = u(rng);
    const Behavior m(p.scenario, t * p.values + (1 - t) * q.values);
    const RobustnessRecord rp = robustness_record(p), rq = robustness_record(q),
                           rm = robustness_record(m);
    for (Measure k : {Measure::WhiteNoise, Measure::Standard, Measure::Generalized})
      EXPECT_LE(*rm.get(k), t * *rp.get(k) + (1 - t) * *rq.get(k) + 1e-8);
  }
}

TEST(Properties, RelabelingInvariance) {
  const Behavior p = cglmp_behavior(max_entangled(3), 3);
  Relabeling r = Relabeling::identity(p.scenario);
  r.settings_a = {1, 0};
  r.outcomes_b[1] = {2, 0, 1};
  const Behavior q = apply_relabeling(p, r);
  const RobustnessRecord rp = robustness_record(p), rq = robustness_record(q);
  EXPECT_NEAR(*rp.r_w, *rq.r_w, 1e-8);
  EXPECT_NEAR(*rp.r_s, *rq.r_s, 1e-8);
  EXPECT_NEAR(*rp.r_g, *rq.r_g, 1e-8);
}

TEST(Properties, MixingWithNoiseScalesRobustness) {
  // P' = (P + r N) / (1 + r) with N local: r_s(P') = (r_s(P) - r) / (1 + r).
  const StandardRobustness s = standard_robustness(tsirelson());
  const double r = 0.1;
  const Behavior mixed(tsirelson().scenario,
                       (tsirelson().values + r * local_behavior(s.noise).values) / (1 + r));
  EXPECT_NEAR(standard_robustness(mixed).r_s, (s.r_s - r) / (1 + r), 1e-8);
}

TEST(Properties, CertificatesOnEverySolve) {
  RobustnessOptions opt;
  int solves = 0;
  opt.on_solve = [&](const char*, const Solution<double>& sol) {
    ++solves;
    EXPECT_LE(sol.certificate.duality_gap, 1e-8);
    EXPECT_LE(sol.certificate.primal_residual, 1e-8);
    EXPECT_LE(sol.certificate.dual_infeasibility, 1e-8);
  };
  std::mt19937 rng(3);
  for (int i = 0; i < 10; ++i) robustness_record(testing::random_behavior(rng), {}, opt);
  EXPECT_EQ(solves, 30);
}

TEST(Properties, AgreesWithChshOracle) {
  std::mt19937 rng(5);
  int local = 0;
  for (int i = 0; i < 100; ++i) {
    const Behavior p = testing::random_chsh_behavior(rng);
    const bool oracle = testing::chsh_oracle_local(p);
    local += oracle;
    EXPECT_EQ(is_local(p), oracle);
  }
  EXPECT_GT(local, 5);
  EXPECT_LT(local, 95);
}

}  // namespace
}  // namespace bellrobust
