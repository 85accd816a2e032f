#include "bellrobust/robustness.hpp"

#include <cmath>
#include <sstream>

namespace bellrobust {

namespace {

void require_valid(const Behavior& p, const RobustnessOptions& opt) {
  const ValidationReport report = validate_behavior(p, opt.validation_tol);
  if (!report.ok())
    throw InputError("behavior failed validation: " + report.to_string());
}

LinearProgram<double> empty_program(Eigen::Index n) {
  LinearProgram<double> lp;
  lp.objective = Vector::Zero(n);
  lp.eq_lhs = Matrix(0, n);
  lp.eq_rhs = Vector(0);
  lp.ineq_lhs = Matrix(0, n);
  lp.ineq_rhs = Vector(0);
  return lp;
}

Solution<double> solve_optimal(const LinearProgram<double>& lp,
                               const RobustnessOptions& opt,
                               const char* what) {
  Solution<double> sol = solve(lp, opt.lp_tol);
  if (sol.status != Status::Optimal) {
    std::ostringstream os;
    os << what << " LP ended " << to_string(sol.status)
       << "; the input is probably not a valid behavior";
    throw ResourceError(os.str());
  }
  if (opt.on_solve) opt.on_solve(what, sol);
  return sol;
}

GlobalDistribution normalized(const Scenario& s, const Vector& w) {
  const double total = w.sum();
  GlobalDistribution d{s, w};
  if (total > 0) {
    d.weights /= total;
  } else {
    d.weights = Vector::Zero(w.size());
    d.weights(0) = 1.0;
  }
  return d;
}

// 1^T G / n, exactly ones for every scenario.
Vector mass_objective(const Matrix& g, const Scenario& s) {
  return g.colwise().sum().transpose() / static_cast<double>(s.block_count());
}

double clamp_zero(double r, double tol) { return std::abs(r) <= tol ? 0.0 : r; }

}  // namespace

Measure parse_measure(const std::string& token) {
  if (token == "w") return Measure::WhiteNoise;
  if (token == "s") return Measure::Standard;
  if (token == "g") return Measure::Generalized;
  throw InputError("unknown measure '" + token + "', expected w, s or g");
}

const char* measure_name(Measure m) {
  switch (m) {
    case Measure::WhiteNoise: return "r_w";
    case Measure::Standard: return "r_s";
    case Measure::Generalized: return "r_g";
  }
  return "?";
}

BellFunctional make_functional(const Scenario& s, Vector coefficients,
                               std::size_t max_strategies) {
  if (static_cast<std::size_t>(coefficients.size()) != s.behavior_size())
    throw ShapeError("functional length does not match scenario");
  const Matrix g = local_matrix(s, max_strategies);
  const double bound = (g.transpose() * coefficients).cwiseAbs().maxCoeff();
  return {s, std::move(coefficients), bound};
}

BellFunctional chsh_functional() {
  const Scenario s = Scenario::binary_input(2, 2);
  Vector c(16);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          c(static_cast<Eigen::Index>(flat_index(s, x, y, a, b))) =
              ((x * y + a + b) % 2 == 0) ? 1.0 : -1.0;
  return make_functional(s, std::move(c));
}

double evaluate_functional(const BellFunctional& s, const Behavior& p) {
  if (s.coefficients.size() != p.values.size())
    throw ShapeError("functional and behavior lengths differ");
  return s.coefficients.dot(p.values);
}

Behavior local_behavior(const GlobalDistribution& d) {
  return {d.scenario, local_matrix(d.scenario) * d.weights};
}

bool is_local(const Behavior& p, const RobustnessOptions& opt) {
  require_valid(p, opt);
  const Matrix g = local_matrix(p.scenario, opt.max_strategies);
  LinearProgram<double> lp = empty_program(g.cols());
  lp.eq_lhs = g;
  lp.eq_rhs = p.values;
  return feasible(lp, opt.lp_tol);
}

GeneralizedRobustness generalized_robustness(const Behavior& p,
                                             const RobustnessOptions& opt) {
  require_valid(p, opt);
  const Scenario& s = p.scenario;
  const Matrix g = local_matrix(s, opt.max_strategies);
  LinearProgram<double> lp = empty_program(g.cols());
  lp.objective = mass_objective(g, s);
  lp.ineq_lhs = g;
  lp.ineq_rhs = p.values;
  const Solution<double> sol = solve_optimal(lp, opt, "generalized robustness");

  GeneralizedRobustness out;
  out.r_g = clamp_zero(sol.objective_value - 1.0, opt.lp_tol);
  out.witness = normalized(s, sol.primal);
  Vector excess = g * sol.primal - p.values;
  if (out.r_g > 0)
    out.noise = Behavior(s, excess / out.r_g);
  else
    out.noise = uniform_behavior(s);

  if (opt.cross_check_explicit) {
    // Variables (L, N): G L - N = P, G_NS N = 0.
    const Matrix ns = nosignaling_matrix(s);
    const Eigen::Index nl = g.cols(), nn = g.rows();
    LinearProgram<double> full = empty_program(nl + nn);
    full.objective.head(nl) = lp.objective;
    full.eq_lhs = Matrix::Zero(nn + ns.rows(), nl + nn);
    full.eq_lhs.topLeftCorner(nn, nl) = g;
    full.eq_lhs.topRightCorner(nn, nn) = -Matrix::Identity(nn, nn);
    full.eq_lhs.bottomRightCorner(ns.rows(), nn) = ns;
    full.eq_rhs = Vector::Zero(nn + ns.rows());
    full.eq_rhs.head(nn) = p.values;
    const Solution<double> check =
        solve_optimal(full, opt, "explicit generalized robustness");
    const double r_explicit = check.objective_value - 1.0;
    if (std::abs(r_explicit - out.r_g) > 1e-7) {
      std::ostringstream os;
      os << "generalized robustness forms disagree: reduced " << out.r_g
         << " vs explicit " << r_explicit;
      throw ResourceError(os.str());
    }
  }
  return out;
}

StandardRobustness standard_robustness(const Behavior& p,
                                       const RobustnessOptions& opt) {
  require_valid(p, opt);
  const Scenario& s = p.scenario;
  const Matrix g = local_matrix(s, opt.max_strategies);
  const Eigen::Index n = g.cols();
  LinearProgram<double> lp = empty_program(2 * n);
  lp.objective.head(n) = mass_objective(g, s);
  lp.eq_lhs.resize(g.rows(), 2 * n);
  lp.eq_lhs << g, -g;
  lp.eq_rhs = p.values;
  const Solution<double> sol = solve_optimal(lp, opt, "standard robustness");

  StandardRobustness out;
  out.r_s = clamp_zero(sol.objective_value - 1.0, opt.lp_tol);
  out.witness = normalized(s, sol.primal.head(n));
  out.noise = normalized(s, sol.primal.tail(n));
  // Dual feasibility gives 0 <= y . v <= 1 on every vertex v, and
  // y . P = r_s + 1. Shifting by half the normalization functional centers
  // the vertex values on [-1, 1].
  const Vector centered =
      2.0 * sol.dual_eq -
      Vector::Constant(g.rows(), 1.0 / static_cast<double>(s.block_count()));
  out.functional = {s, centered,
                    (g.transpose() * centered).cwiseAbs().maxCoeff()};
  return out;
}

WhiteNoiseRobustness white_noise_robustness(const Behavior& p,
                                            const RobustnessOptions& opt) {
  require_valid(p, opt);
  const Scenario& s = p.scenario;
  const Matrix g = local_matrix(s, opt.max_strategies);
  const Eigen::Index n = g.cols();
  LinearProgram<double> lp = empty_program(n + 1);
  lp.objective(n) = 1.0;
  lp.eq_lhs.resize(g.rows(), n + 1);
  lp.eq_lhs << g, -uniform_behavior(s).values;
  lp.eq_rhs = p.values;
  const Solution<double> sol = solve_optimal(lp, opt, "white-noise robustness");

  WhiteNoiseRobustness out;
  out.r_w = clamp_zero(sol.primal(n), opt.lp_tol);
  out.witness = normalized(s, sol.primal.head(n));
  return out;
}

double violation_ratio(const Behavior& p, const RobustnessOptions& opt) {
  return 2.0 * standard_robustness(p, opt).r_s + 1.0;
}

std::optional<double> RobustnessRecord::get(Measure m) const {
  switch (m) {
    case Measure::WhiteNoise: return r_w;
    case Measure::Standard: return r_s;
    case Measure::Generalized: return r_g;
  }
  return std::nullopt;
}

RobustnessRecord robustness_record(const Behavior& p,
                                   const MeasureSelection& which,
                                   const RobustnessOptions& opt) {
  RobustnessRecord r;
  if (which.white_noise) r.r_w = white_noise_robustness(p, opt).r_w;
  if (which.standard) r.r_s = standard_robustness(p, opt).r_s;
  if (which.generalized) r.r_g = generalized_robustness(p, opt).r_g;
  return r;
}

}  // namespace bellrobust
