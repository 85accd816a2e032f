#include "bellrobust/scenario.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace bellrobust {

Scenario::Scenario(int sa, int sb, int ma, int mb)
    : settings_a(sa), settings_b(sb), outcomes_a(ma), outcomes_b(mb) {
  if (sa < 1 || sb < 1 || ma < 1 || mb < 1)
    throw RangeError("scenario fields must be >= 1, got " + to_string());
}

std::size_t Scenario::strategy_count(std::size_t limit) const {
  std::size_t n = 1;
  auto multiply = [&](int base, int times) {
    for (int i = 0; i < times; ++i) {
      if (n > limit / static_cast<std::size_t>(base))
        throw SizeError("strategy count of " + to_string() +
                            " exceeds the limit of " + std::to_string(limit),
                        limit);
      n *= static_cast<std::size_t>(base);
    }
  };
  multiply(outcomes_a, settings_a);
  multiply(outcomes_b, settings_b);
  if (n > limit)
    throw SizeError("strategy count of " + to_string() +
                        " exceeds the limit of " + std::to_string(limit),
                    limit);
  return n;
}

std::string Scenario::to_string() const {
  std::ostringstream os;
  os << "(" << settings_a << "," << settings_b << "," << outcomes_a << ","
     << outcomes_b << ")";
  return os.str();
}

Behavior::Behavior(Scenario s, Vector v)
    : scenario(s), values(std::move(v)) {
  if (static_cast<std::size_t>(values.size()) != scenario.behavior_size())
    throw ShapeError("behavior length " + std::to_string(values.size()) +
                     " does not match scenario " + scenario.to_string());
}

double Behavior::operator()(int x, int y, int a, int b) const {
  return values(static_cast<Eigen::Index>(flat_index(scenario, x, y, a, b)));
}

double& Behavior::operator()(int x, int y, int a, int b) {
  return values(static_cast<Eigen::Index>(flat_index(scenario, x, y, a, b)));
}

Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::RowMajor>>
Behavior::block(int x, int y) const {
  const std::size_t start = flat_index(scenario, x, y, 0, 0);
  return {values.data() + start, scenario.outcomes_a, scenario.outcomes_b};
}

std::size_t flat_index(const Scenario& s, int x, int y, int a, int b) {
  if (x < 0 || x >= s.settings_a || y < 0 || y >= s.settings_b || a < 0 ||
      a >= s.outcomes_a || b < 0 || b >= s.outcomes_b) {
    std::ostringstream os;
    os << "index (x=" << x << ",y=" << y << ",a=" << a << ",b=" << b
       << ") out of range for scenario " << s.to_string();
    throw RangeError(os.str());
  }
  return (static_cast<std::size_t>(x) * s.settings_b + y) * s.block_size() +
         static_cast<std::size_t>(a) * s.outcomes_b + b;
}

DeterministicStrategy strategy_at(const Scenario& s, std::size_t index) {
  DeterministicStrategy d;
  d.assign_a.resize(s.settings_a);
  d.assign_b.resize(s.settings_b);
  // Least significant digit is Bob's last setting.
  for (int y = s.settings_b - 1; y >= 0; --y) {
    d.assign_b[y] = static_cast<int>(index % s.outcomes_b);
    index /= s.outcomes_b;
  }
  for (int x = s.settings_a - 1; x >= 0; --x) {
    d.assign_a[x] = static_cast<int>(index % s.outcomes_a);
    index /= s.outcomes_a;
  }
  if (index != 0) throw RangeError("strategy index out of range");
  return d;
}

std::vector<DeterministicStrategy> enumerate_deterministic_strategies(
    const Scenario& s, std::size_t limit) {
  const std::size_t n = s.strategy_count(limit);
  std::vector<DeterministicStrategy> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) out.push_back(strategy_at(s, j));
  return out;
}

Behavior vertex_behavior(const DeterministicStrategy& d, const Scenario& s) {
  if (d.assign_a.size() != static_cast<std::size_t>(s.settings_a) ||
      d.assign_b.size() != static_cast<std::size_t>(s.settings_b))
    throw ShapeError("strategy does not match scenario " + s.to_string());
  Behavior p(s, Vector::Zero(static_cast<Eigen::Index>(s.behavior_size())));
  for (int x = 0; x < s.settings_a; ++x)
    for (int y = 0; y < s.settings_b; ++y) p(x, y, d.assign_a[x], d.assign_b[y]) = 1.0;
  return p;
}

Behavior uniform_behavior(const Scenario& s) {
  return {s, Vector::Constant(static_cast<Eigen::Index>(s.behavior_size()),
                              1.0 / static_cast<double>(s.block_size()))};
}

Behavior pr_box() {
  Behavior p(Scenario::binary_input(2, 2), Vector::Zero(16));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((a ^ b) == (x & y)) p(x, y, a, b) = 0.5;
  return p;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (const auto& v : violations) {
    switch (v.kind) {
      case Violation::Kind::Shape: os << "shape"; break;
      case Violation::Kind::Positivity: os << "positivity"; break;
      case Violation::Kind::Normalization: os << "normalization"; break;
      case Violation::Kind::NoSignaling: os << "no-signaling"; break;
    }
    os << " violation " << v.magnitude;
    if (!v.detail.empty()) os << " (" << v.detail << ")";
    os << "\n";
  }
  return os.str();
}

ValidationReport validate_behavior(const Behavior& p, double tol) {
  ValidationReport report;
  const Scenario& s = p.scenario;
  if (static_cast<std::size_t>(p.values.size()) != s.behavior_size()) {
    report.violations.push_back(
        {Violation::Kind::Shape,
         std::abs(static_cast<double>(p.values.size()) -
                  static_cast<double>(s.behavior_size())),
         "length does not match scenario " + s.to_string()});
    return report;
  }
  if (!p.values.allFinite()) {
    report.violations.push_back({Violation::Kind::Positivity,
                                 std::numeric_limits<double>::infinity(),
                                 "non-finite entry"});
    return report;
  }

  Eigen::Index worst = 0;
  const double min_entry = p.values.minCoeff(&worst);
  if (-min_entry > tol)
    report.violations.push_back({Violation::Kind::Positivity, -min_entry,
                                 "entry " + std::to_string(worst)});

  double worst_norm = 0.0;
  std::string where;
  for (int x = 0; x < s.settings_a; ++x)
    for (int y = 0; y < s.settings_b; ++y) {
      const double dev = std::abs(p.block(x, y).sum() - 1.0);
      if (dev > worst_norm) {
        worst_norm = dev;
        where = "block (" + std::to_string(x) + "," + std::to_string(y) + ")";
      }
    }
  if (worst_norm > tol)
    report.violations.push_back(
        {Violation::Kind::Normalization, worst_norm, where});

  if (s.settings_a > 1 || s.settings_b > 1) {
    const Vector residual = nosignaling_matrix(s) * p.values;
    Eigen::Index row = 0;
    const double worst_ns = residual.cwiseAbs().maxCoeff(&row);
    if (worst_ns > tol)
      report.violations.push_back({Violation::Kind::NoSignaling, worst_ns,
                                   "row " + std::to_string(row)});
  }
  return report;
}

}  // namespace bellrobust
