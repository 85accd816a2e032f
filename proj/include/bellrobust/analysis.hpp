#pragma once

// Experiment drivers: dimension, Schmidt-simplex and path scans of
// CGLMP-measured states, plus the order-reversal test between two measures.

#include <string>
#include <vector>

#include "bellrobust/robustness.hpp"

namespace bellrobust {

inline constexpr double kInequivalenceTol = 1e-4;
inline constexpr int kDefaultDimensionCeiling = 8;

struct ScanRecord {
  std::string label;
  std::vector<double> parameters;
  RobustnessRecord record;
};

struct ScanOptions {
  RobustnessOptions robustness;
  int workers = 1;
  int dimension_ceiling = kDefaultDimensionCeiling;
  bool white_noise = false;
};

/// True iff q1 and q2 order `a` and `b` oppositely, each by more than tol.
/// Monotones that disagree this way certify that no free operation maps
/// either behavior onto the other.
bool inequivalent(const RobustnessRecord& a, const RobustnessRecord& b,
                  Measure q1, Measure q2, double tol = kInequivalenceTol);

/// |Psi_D> measured with the CGLMP settings at d_eff = D, for every D in
/// [d_min, d_max]. parameters = {D}.
std::vector<ScanRecord> scan_dimensions(int d_min, int d_max,
                                        const ScanOptions& opt = {});

/// Triangular grid q = (i, j, n - i - j) / n over Schmidt coefficients of a
/// D = 3 state, measured at the given d_eff. parameters = {q0, q1, q2}.
std::vector<ScanRecord> scan_simplex(int d_eff, int resolution,
                                     const ScanOptions& opt = {});

/// `steps` points p = i / (steps - 1) along one of the parametrized paths.
/// parameters = {path, p}.
std::vector<ScanRecord> scan_path(int d_eff, int path, int steps,
                                  const ScanOptions& opt = {});

/// Least-squares slope of r_s against r_g through the origin, over records
/// with r_g > 1e-6. Throws InputError with fewer than two such records.
double fit_ratio(const std::vector<ScanRecord>& records);

}  // namespace bellrobust
