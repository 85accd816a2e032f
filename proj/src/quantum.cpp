#include "bellrobust/quantum.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace bellrobust {

namespace {
constexpr double kNormTol = 1e-9;
constexpr double kSchmidtRenormalize = 1e-9;
}  // namespace

PureState::PureState(int d, ComplexVector amps)
    : dim(d), amplitudes(std::move(amps)) {
  if (d < 1) throw RangeError("state dimension must be >= 1");
  if (amplitudes.size() != static_cast<Eigen::Index>(d) * d)
    throw ShapeError("state needs " + std::to_string(d * d) +
                     " amplitudes, got " + std::to_string(amplitudes.size()));
  if (std::abs(amplitudes.squaredNorm() - 1.0) > kNormTol)
    throw InputError("state is not normalized: squared norm " +
                     std::to_string(amplitudes.squaredNorm()));
}

ComplexMatrix PureState::coefficients() const {
  // Row-major reading of the amplitude vector.
  return Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>(amplitudes.data(),
                                                          dim, dim);
}

SchmidtSpec::SchmidtSpec(std::vector<double> q) : q_(std::move(q)) {
  if (q_.empty()) throw InputError("Schmidt coefficients are empty");
  for (double v : q_)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw InputError("Schmidt coefficients must be finite and >= 0");
  const double sum = std::accumulate(q_.begin(), q_.end(), 0.0);
  if (std::abs(sum - 1.0) > kSchmidtRenormalize)
    throw InputError("Schmidt coefficients sum to " + std::to_string(sum) +
                     ", expected 1");
  for (double& v : q_) v /= sum;
}

double MeasurementBasis::orthonormality_error() const {
  const ComplexMatrix gram = vectors.adjoint() * vectors;
  return (gram - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

PureState max_entangled(int dim) {
  if (dim < 1) throw RangeError("dimension must be >= 1");
  return schmidt_state(
      SchmidtSpec(std::vector<double>(static_cast<std::size_t>(dim),
                                      1.0 / dim)));
}

PureState schmidt_state(const SchmidtSpec& spec) {
  const int d = spec.dim();
  ComplexVector amps = ComplexVector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i)
    amps(static_cast<Eigen::Index>(i) * d + i) =
        std::sqrt(spec.coefficients()[static_cast<std::size_t>(i)]);
  return {d, std::move(amps)};
}

SchmidtSpec path_state(int family, int path, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw RangeError("path parameter must lie in [0, 1], got " +
                     std::to_string(p));
  const double mid = 1.0 / 3.0 + p / 6.0;
  const double fade = (1.0 - p) / 3.0;
  const double up = (1.0 + p) / 2.0, down = (1.0 - p) / 2.0;
  const double grow = (1.0 + 2.0 * p) / 3.0;
  if (family == 2) {
    switch (path) {
      case 1: return SchmidtSpec({mid, mid, fade});
      case 2: return SchmidtSpec({up, down, 0.0});
      case 3: return SchmidtSpec({grow, fade, fade});
    }
  } else if (family == 3) {
    switch (path) {
      case 1: return SchmidtSpec({mid, fade, mid});
      case 2: return SchmidtSpec({up, 0.0, down});
      case 3: return SchmidtSpec({grow, fade, fade});
    }
  } else {
    throw RangeError("path family must be 2 or 3");
  }
  throw RangeError("path must be 1, 2 or 3");
}

MeasurementBasis cglmp_basis(Party party, int setting, int dim, int d_eff) {
  if (dim < 1 || d_eff < 1 || d_eff > dim)
    throw RangeError("need 1 <= d_eff <= D, got D=" + std::to_string(dim) +
                     " d_eff=" + std::to_string(d_eff));
  if (setting != 0 && setting != 1)
    throw RangeError("CGLMP settings are 0 and 1");
  static constexpr double kAlpha[2] = {0.0, 0.5};
  static constexpr double kBeta[2] = {0.25, -0.25};

  MeasurementBasis basis{dim, ComplexMatrix::Zero(dim, dim)};
  const double norm = 1.0 / std::sqrt(static_cast<double>(d_eff));
  for (int k = 0; k < dim; ++k) {
    if (k >= d_eff) {
      basis.vectors(k, k) = 1.0;
      continue;
    }
    const double shift = party == Party::A ? k + kAlpha[setting]
                                           : -k + kBeta[setting];
    for (int j = 0; j < d_eff; ++j) {
      const double phase = 2.0 * std::numbers::pi * j * shift / d_eff;
      basis.vectors(j, k) = norm * Complex(std::cos(phase), std::sin(phase));
    }
  }
  return basis;
}

Behavior born_behavior(const PureState& state,
                       const std::vector<MeasurementBasis>& bases_a,
                       const std::vector<MeasurementBasis>& bases_b) {
  if (bases_a.empty() || bases_b.empty())
    throw ShapeError("each party needs at least one measurement");
  for (const auto* group : {&bases_a, &bases_b})
    for (const auto& m : *group)
      if (m.dim != state.dim || m.vectors.rows() != state.dim ||
          m.vectors.cols() != state.dim)
        throw ShapeError("measurement dimension does not match the state");

  const Scenario s(static_cast<int>(bases_a.size()),
                   static_cast<int>(bases_b.size()), state.dim, state.dim);
  Behavior p(s, Vector::Zero(static_cast<Eigen::Index>(s.behavior_size())));
  const ComplexMatrix psi = state.coefficients();
  for (int x = 0; x < s.settings_a; ++x)
    for (int y = 0; y < s.settings_b; ++y) {
      // amplitude(a, b) = sum_ij conj(A_ia) psi_ij conj(B_jb)
      const ComplexMatrix amp =
          bases_a[static_cast<std::size_t>(x)].vectors.adjoint() * psi *
          bases_b[static_cast<std::size_t>(y)].vectors.conjugate();
      for (int a = 0; a < s.outcomes_a; ++a)
        for (int b = 0; b < s.outcomes_b; ++b) p(x, y, a, b) = std::norm(amp(a, b));
    }
  return p;
}

Behavior cglmp_behavior(const PureState& state, int d_eff) {
  std::vector<MeasurementBasis> a, b;
  for (int setting = 0; setting < 2; ++setting) {
    a.push_back(cglmp_basis(Party::A, setting, state.dim, d_eff));
    b.push_back(cglmp_basis(Party::B, setting, state.dim, d_eff));
  }
  return born_behavior(state, a, b);
}

}  // namespace bellrobust
