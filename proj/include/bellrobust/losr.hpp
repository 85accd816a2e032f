#pragma once

// Free operations on behaviors: relabelings, outcome extension and
// coarse-graining, and shared-randomness mixing.

#include <functional>
#include <vector>

#include "bellrobust/robustness.hpp"
#include "bellrobust/scenario.hpp"

namespace bellrobust {

/// Maps original labels to new ones: the entry of P at (x, y, a, b) moves to
/// (settings_a[x], settings_b[y], outcomes_a[x][a], outcomes_b[y][b]).
struct Relabeling {
  std::vector<int> settings_a;
  std::vector<int> settings_b;
  std::vector<std::vector<int>> outcomes_a;  // indexed by original setting
  std::vector<std::vector<int>> outcomes_b;

  static Relabeling identity(const Scenario& s);
};

Behavior apply_relabeling(const Behavior& p, const Relabeling& r);

/// Adds k outcomes to every measurement of both parties, each with zero
/// probability.
Behavior output_extension(const Behavior& p, int k);
/// Asymmetric variant: k_a outcomes for Alice, k_b for Bob.
Behavior output_extension(const Behavior& p, int k_a, int k_b);

/// Coarse-grains outcomes: outcome a of Alice's setting x becomes
/// map_a[x][a] in [0, new_outcomes_a); probabilities of merged labels add.
Behavior merge_outcomes(const Behavior& p,
                        const std::vector<std::vector<int>>& map_a,
                        int new_outcomes_a,
                        const std::vector<std::vector<int>>& map_b,
                        int new_outcomes_b);

struct ProcessedComponent {
  std::function<Behavior(const Behavior&)> operation;
  Behavior base;
};

/// q_0 P_l + sum_k q_k O_k(P_k).
struct LosrMixture {
  std::vector<double> weights;  // q_0 first
  Behavior local_component;
  std::vector<ProcessedComponent> components;
};

/// Throws InputError when weights are negative or do not sum to 1, when the
/// components disagree on the scenario, or when the zeroth component is not
/// local.
Behavior mix(const LosrMixture& mixture, const RobustnessOptions& opt = {});

struct MonotonicityRow {
  int k = 0;
  double r_w = 0;
  double r_s = 0;
  double r_g = 0;
};

/// Measures of the k-fold outcome extension of P for k = 0..k_max.
std::vector<MonotonicityRow> monotonicity_table(
    const Behavior& p, int k_max, const RobustnessOptions& opt = {});

}  // namespace bellrobust
