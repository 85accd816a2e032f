#pragma once

// Bipartite pure states, CGLMP-type measurement bases, and Born-rule
// behaviors.

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "bellrobust/scenario.hpp"

namespace bellrobust {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Amplitude (i * dim + j) multiplies |i>_A |j>_B.
struct PureState {
  int dim = 1;
  ComplexVector amplitudes;

  PureState() = default;
  PureState(int d, ComplexVector amps);

  /// The dim x dim coefficient matrix, row index on Alice.
  ComplexMatrix coefficients() const;
};

/// Schmidt coefficients q_i of sum_i sqrt(q_i) |ii>.
class SchmidtSpec {
 public:
  /// Rejects negative entries and sums off by more than 1e-9; sums within
  /// that window are renormalized.
  explicit SchmidtSpec(std::vector<double> q);

  const std::vector<double>& coefficients() const { return q_; }
  int dim() const { return static_cast<int>(q_.size()); }

 private:
  std::vector<double> q_;
};

/// Column k is the eigenvector for outcome k.
struct MeasurementBasis {
  int dim = 1;
  ComplexMatrix vectors;

  /// max |<v_i|v_j> - delta_ij|.
  double orthonormality_error() const;
};

enum class Party { A, B };

PureState max_entangled(int dim);
PureState schmidt_state(const SchmidtSpec& spec);

/// The parametrized families used to move between |Psi_3>, |Psi_2>,
/// (|00> + |22>)/sqrt(2) and |00>. `family` is the effective dimension of
/// the settings the path is paired with (2 or 3); `path` is 1, 2 or 3.
SchmidtSpec path_state(int family, int path, double p);

/// Alice, setting x:  |k> = d^{-1/2} sum_j exp(2 pi i j (k + alpha_x) / d) |j>
/// Bob,   setting y:  |l> = d^{-1/2} sum_j exp(2 pi i j (-l + beta_y) / d) |j>
/// for outcomes below d = d_eff, computational vectors above.
/// alpha = (0, 1/2), beta = (1/4, -1/4) for settings (0, 1).
MeasurementBasis cglmp_basis(Party party, int setting, int dim, int d_eff);

/// p(a, b | x, y) = |(<a|_{A,x} (x) <b|_{B,y}) |psi>|^2.
Behavior born_behavior(const PureState& state,
                       const std::vector<MeasurementBasis>& bases_a,
                       const std::vector<MeasurementBasis>& bases_b);

/// Both settings of both parties from cglmp_basis.
Behavior cglmp_behavior(const PureState& state, int d_eff);

}  // namespace bellrobust
