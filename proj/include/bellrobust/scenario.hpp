#pragma once

// Bipartite Bell scenarios, the flat behavior layout, and the two linear
// systems that define the no-signaling set and the local polytope.
//
// Layout: a behavior is the concatenation of one block per setting pair
// (x, y), x-major. Each block lists p(a, b | x, y) row-major over (a, b).
// All labels are zero-based.

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

#include "bellrobust/errors.hpp"

namespace bellrobust {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr std::size_t kDefaultMaxStrategies = 10'000'000;

struct Scenario {
  int settings_a = 2;
  int settings_b = 2;
  int outcomes_a = 2;
  int outcomes_b = 2;

  Scenario() = default;
  Scenario(int sa, int sb, int ma, int mb);

  /// Two settings per party with the given outcome counts.
  static Scenario binary_input(int ma, int mb) { return {2, 2, ma, mb}; }

  std::size_t block_size() const {
    return static_cast<std::size_t>(outcomes_a) * outcomes_b;
  }
  std::size_t block_count() const {
    return static_cast<std::size_t>(settings_a) * settings_b;
  }
  std::size_t behavior_size() const { return block_size() * block_count(); }

  /// m_A^{s_A} * m_B^{s_B}; throws SizeError above `limit`.
  std::size_t strategy_count(std::size_t limit = kDefaultMaxStrategies) const;

  std::string to_string() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct DeterministicStrategy {
  std::vector<int> assign_a;  // setting -> outcome
  std::vector<int> assign_b;

  friend bool operator==(const DeterministicStrategy&,
                         const DeterministicStrategy&) = default;
};

struct Behavior {
  Scenario scenario;
  Vector values;

  Behavior() = default;
  Behavior(Scenario s, Vector v);

  double operator()(int x, int y, int a, int b) const;
  double& operator()(int x, int y, int a, int b);

  /// The (x, y) block as an m_A x m_B row-major view.
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
  block(int x, int y) const;
};

struct GlobalDistribution {
  Scenario scenario;
  Vector weights;
};

std::size_t flat_index(const Scenario& s, int x, int y, int a, int b);

/// Decodes the j-th strategy. Order is lexicographic over
/// (a_0, ..., a_{sA-1}, b_0, ..., b_{sB-1}) with a_0 most significant.
DeterministicStrategy strategy_at(const Scenario& s, std::size_t index);

std::vector<DeterministicStrategy> enumerate_deterministic_strategies(
    const Scenario& s, std::size_t limit = kDefaultMaxStrategies);

Behavior vertex_behavior(const DeterministicStrategy& strategy,
                         const Scenario& s);

Behavior uniform_behavior(const Scenario& s);

/// Binary-input binary-output box with p(a, b | x, y) = 1/2 iff a ^ b = x & y.
Behavior pr_box();

/// Columns are the vertex behaviors in strategy order. Entries are 0/1.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> local_matrix(
    const Scenario& s, std::size_t limit = kDefaultMaxStrategies) {
  const std::size_t n = s.strategy_count(limit);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> g =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(
          static_cast<Eigen::Index>(s.behavior_size()),
          static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const DeterministicStrategy d = strategy_at(s, j);
    for (int x = 0; x < s.settings_a; ++x)
      for (int y = 0; y < s.settings_b; ++y)
        g(static_cast<Eigen::Index>(
              flat_index(s, x, y, d.assign_a[x], d.assign_b[y])),
          static_cast<Eigen::Index>(j)) = Scalar(1);
  }
  return g;
}

/// One row per (party, setting, outcome, consecutive pair of the other
/// party's settings), equating the marginals across that pair.
/// Shape: (s_A m_A (s_B - 1) + s_B m_B (s_A - 1)) x behavior_size.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> nosignaling_matrix(
    const Scenario& s) {
  const Eigen::Index rows =
      static_cast<Eigen::Index>(s.settings_a) * s.outcomes_a *
          (s.settings_b - 1) +
      static_cast<Eigen::Index>(s.settings_b) * s.outcomes_b *
          (s.settings_a - 1);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> g =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(
          rows, static_cast<Eigen::Index>(s.behavior_size()));
  auto col = [&](int x, int y, int a, int b) {
    return static_cast<Eigen::Index>(flat_index(s, x, y, a, b));
  };
  Eigen::Index r = 0;
  for (int x = 0; x < s.settings_a; ++x)
    for (int a = 0; a < s.outcomes_a; ++a)
      for (int y = 0; y + 1 < s.settings_b; ++y, ++r)
        for (int b = 0; b < s.outcomes_b; ++b) {
          g(r, col(x, y, a, b)) += Scalar(1);
          g(r, col(x, y + 1, a, b)) -= Scalar(1);
        }
  for (int y = 0; y < s.settings_b; ++y)
    for (int b = 0; b < s.outcomes_b; ++b)
      for (int x = 0; x + 1 < s.settings_a; ++x, ++r)
        for (int a = 0; a < s.outcomes_a; ++a) {
          g(r, col(x, y, a, b)) += Scalar(1);
          g(r, col(x + 1, y, a, b)) -= Scalar(1);
        }
  return g;
}

struct Violation {
  enum class Kind { Shape, Positivity, Normalization, NoSignaling };
  Kind kind;
  double magnitude;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Nonnegativity, per-block normalization and no-signaling, each within
/// `tol`. Only the worst offender of each kind is reported.
ValidationReport validate_behavior(const Behavior& p, double tol);

}  // namespace bellrobust
