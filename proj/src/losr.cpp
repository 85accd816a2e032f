#include "bellrobust/losr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bellrobust {

namespace {

bool is_permutation_of_range(const std::vector<int>& v, std::size_t n) {
  if (v.size() != n) return false;
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i)
    if (sorted[i] != static_cast<int>(i)) return false;
  return true;
}

void check_map(const std::vector<std::vector<int>>& map, int settings,
               int outcomes, int targets, const char* who) {
  if (map.size() != static_cast<std::size_t>(settings))
    throw ShapeError(std::string(who) + " outcome map needs one entry per setting");
  for (const auto& row : map) {
    if (row.size() != static_cast<std::size_t>(outcomes))
      throw ShapeError(std::string(who) + " outcome map has the wrong length");
    for (int t : row)
      if (t < 0 || t >= targets)
        throw RangeError(std::string(who) + " outcome map target out of range");
  }
}

}  // namespace

Relabeling Relabeling::identity(const Scenario& s) {
  Relabeling r;
  r.settings_a.resize(s.settings_a);
  r.settings_b.resize(s.settings_b);
  std::iota(r.settings_a.begin(), r.settings_a.end(), 0);
  std::iota(r.settings_b.begin(), r.settings_b.end(), 0);
  std::vector<int> oa(s.outcomes_a), ob(s.outcomes_b);
  std::iota(oa.begin(), oa.end(), 0);
  std::iota(ob.begin(), ob.end(), 0);
  r.outcomes_a.assign(s.settings_a, oa);
  r.outcomes_b.assign(s.settings_b, ob);
  return r;
}

Behavior apply_relabeling(const Behavior& p, const Relabeling& r) {
  const Scenario& s = p.scenario;
  if (!is_permutation_of_range(r.settings_a, s.settings_a) ||
      !is_permutation_of_range(r.settings_b, s.settings_b))
    throw InputError("setting relabeling is not a permutation");
  if (r.outcomes_a.size() != static_cast<std::size_t>(s.settings_a) ||
      r.outcomes_b.size() != static_cast<std::size_t>(s.settings_b))
    throw InputError("outcome relabeling needs one permutation per setting");
  for (const auto& perm : r.outcomes_a)
    if (!is_permutation_of_range(perm, s.outcomes_a))
      throw InputError("Alice's outcome relabeling is not a permutation");
  for (const auto& perm : r.outcomes_b)
    if (!is_permutation_of_range(perm, s.outcomes_b))
      throw InputError("Bob's outcome relabeling is not a permutation");

  Behavior out(s, Vector::Zero(p.values.size()));
  for (int x = 0; x < s.settings_a; ++x)
    for (int y = 0; y < s.settings_b; ++y)
      for (int a = 0; a < s.outcomes_a; ++a)
        for (int b = 0; b < s.outcomes_b; ++b)
          out(r.settings_a[x], r.settings_b[y], r.outcomes_a[x][a],
              r.outcomes_b[y][b]) = p(x, y, a, b);
  return out;
}

Behavior output_extension(const Behavior& p, int k) {
  return output_extension(p, k, k);
}

Behavior output_extension(const Behavior& p, int k_a, int k_b) {
  if (k_a < 0 || k_b < 0) throw RangeError("extension size must be >= 0");
  const Scenario& s = p.scenario;
  const Scenario t(s.settings_a, s.settings_b, s.outcomes_a + k_a,
                   s.outcomes_b + k_b);
  Behavior out(t, Vector::Zero(static_cast<Eigen::Index>(t.behavior_size())));
  for (int x = 0; x < s.settings_a; ++x)
    for (int y = 0; y < s.settings_b; ++y)
      for (int a = 0; a < s.outcomes_a; ++a)
        for (int b = 0; b < s.outcomes_b; ++b) out(x, y, a, b) = p(x, y, a, b);
  return out;
}

Behavior merge_outcomes(const Behavior& p,
                        const std::vector<std::vector<int>>& map_a,
                        int new_outcomes_a,
                        const std::vector<std::vector<int>>& map_b,
                        int new_outcomes_b) {
  const Scenario& s = p.scenario;
  check_map(map_a, s.settings_a, s.outcomes_a, new_outcomes_a, "Alice's");
  check_map(map_b, s.settings_b, s.outcomes_b, new_outcomes_b, "Bob's");
  const Scenario t(s.settings_a, s.settings_b, new_outcomes_a, new_outcomes_b);
  Behavior out(t, Vector::Zero(static_cast<Eigen::Index>(t.behavior_size())));
  for (int x = 0; x < s.settings_a; ++x)
    for (int y = 0; y < s.settings_b; ++y)
      for (int a = 0; a < s.outcomes_a; ++a)
        for (int b = 0; b < s.outcomes_b; ++b)
          out(x, y, map_a[x][a], map_b[y][b]) += p(x, y, a, b);
  return out;
}

Behavior mix(const LosrMixture& mixture, const RobustnessOptions& opt) {
  const auto& q = mixture.weights;
  if (q.size() != mixture.components.size() + 1)
    throw InputError("mixture needs one weight per component plus q_0");
  double total = 0.0;
  for (double w : q) {
    if (!(w >= 0.0)) throw InputError("mixture weights must be >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InputError("mixture weights sum to " + std::to_string(total));

  const Behavior& local = mixture.local_component;
  if (!is_local(local, opt))
    throw InputError("the shared-randomness component is not local");

  Behavior out(local.scenario, q[0] * local.values);
  for (std::size_t k = 0; k < mixture.components.size(); ++k) {
    const ProcessedComponent& c = mixture.components[k];
    const Behavior processed = c.operation ? c.operation(c.base) : c.base;
    if (!(processed.scenario == out.scenario))
      throw ShapeError("mixture components live in different scenarios");
    out.values += q[k + 1] * processed.values;
  }
  return out;
}

std::vector<MonotonicityRow> monotonicity_table(const Behavior& p, int k_max,
                                                const RobustnessOptions& opt) {
  if (k_max < 1) throw RangeError("k_max must be >= 1");
  std::vector<MonotonicityRow> rows;
  for (int k = 0; k <= k_max; ++k) {
    const Behavior extended = output_extension(p, k);
    // Fails fast with SizeError for oversize extensions.
    extended.scenario.strategy_count(opt.max_strategies);
    rows.push_back({k, white_noise_robustness(extended, opt).r_w,
                    standard_robustness(extended, opt).r_s,
                    generalized_robustness(extended, opt).r_g});
  }
  return rows;
}

}  // namespace bellrobust
