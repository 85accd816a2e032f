#pragma once

// White-noise, standard and generalized robustness of a behavior, each as a
// linear program over the weights L >= 0 of the deterministic strategies.
// With G the local matrix and n = s_A s_B (every column of G has n ones):
//
//   generalized:  min (1/n) 1^T G L - 1   s.t.  G L >= P
//   standard:     min (1/n) 1^T G L - 1   s.t.  G L - G L' = P,  L' >= 0
//   white noise:  min t                   s.t.  G L - t P_w = P,  t >= 0
//
// In every case (P + r N) / (1 + r) = G L / (1 + r) is local, where N is the
// optimal noise: (G L - P) / r, G L' / r, or the uniform behavior P_w.

#include <functional>
#include <optional>
#include <string>

#include "bellrobust/lp.hpp"
#include "bellrobust/scenario.hpp"

namespace bellrobust {

enum class Measure { WhiteNoise, Standard, Generalized };

/// Parses "w", "s" or "g".
Measure parse_measure(const std::string& token);
const char* measure_name(Measure m);

struct RobustnessOptions {
  double lp_tol = 1e-9;
  /// Inputs failing validate_behavior at this tolerance are rejected.
  double validation_tol = 1e-7;
  std::size_t max_strategies = kDefaultMaxStrategies;
  /// Generalized robustness only: also solve the form with an explicit
  /// no-signaling noise variable and throw if the two optima disagree.
  bool cross_check_explicit = false;
  /// Called after every Optimal LP solve with the program's name.
  std::function<void(const char*, const Solution<double>&)> on_solve;
};

struct BellFunctional {
  Scenario scenario;
  Vector coefficients;
  /// max over deterministic strategies of |S . vertex|.
  double local_bound = 0;
};

/// Computes the local bound by enumerating the deterministic strategies.
BellFunctional make_functional(const Scenario& s, Vector coefficients,
                               std::size_t max_strategies = kDefaultMaxStrategies);

/// Sum_xy (-1)^{xy} E_xy for binary inputs and outputs; local bound 2.
BellFunctional chsh_functional();

double evaluate_functional(const BellFunctional& s, const Behavior& p);

struct GeneralizedRobustness {
  double r_g = 0;
  /// L* / sum(L*): the local point reached after mixing.
  GlobalDistribution witness;
  /// (G L* - P) / r_g, or uniform when r_g vanishes.
  Behavior noise;
};

struct StandardRobustness {
  double r_s = 0;
  GlobalDistribution witness;
  /// Local noise L' / sum(L'); a point mass on strategy 0 when r_s vanishes.
  GlobalDistribution noise;
  /// Built from the equality duals; |S . P| / local_bound = 2 r_s + 1.
  BellFunctional functional;
};

struct WhiteNoiseRobustness {
  double r_w = 0;
  GlobalDistribution witness;
};

bool is_local(const Behavior& p, const RobustnessOptions& opt = {});

GeneralizedRobustness generalized_robustness(const Behavior& p,
                                             const RobustnessOptions& opt = {});
StandardRobustness standard_robustness(const Behavior& p,
                                       const RobustnessOptions& opt = {});
WhiteNoiseRobustness white_noise_robustness(const Behavior& p,
                                            const RobustnessOptions& opt = {});

/// 2 r_s + 1, the largest ratio of |S . P| to the local bound of S.
double violation_ratio(const Behavior& p, const RobustnessOptions& opt = {});

struct RobustnessRecord {
  std::optional<double> r_w;
  std::optional<double> r_s;
  std::optional<double> r_g;

  std::optional<double> get(Measure m) const;
};

struct MeasureSelection {
  bool white_noise = true;
  bool standard = true;
  bool generalized = true;
};

RobustnessRecord robustness_record(const Behavior& p,
                                   const MeasureSelection& which = {},
                                   const RobustnessOptions& opt = {});

/// The local behavior G * weights.
Behavior local_behavior(const GlobalDistribution& d);

}  // namespace bellrobust
