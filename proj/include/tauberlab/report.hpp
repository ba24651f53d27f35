#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tauberlab {

// Outcome of a numerical bound verification.  `worst_residual` is measured in
// log scale: log LHS - log RHS - log_constant, so a pass report has
// worst_residual <= 0 at every grid point by construction.
struct BoundReport {
  std::string bound_id;
  bool pass = false;
  double log_constant = 0.0;
  double worst_residual = 0.0;
  std::vector<double> attaining_point;
  bool refinement_stable = false;
  std::string grid_description;
  std::map<std::string, double> params;
  // Optional per-point residual dump (grid point, residual) for CSV export.
  std::vector<std::pair<std::vector<double>, double>> residuals;
};

// Constant-drift test shared by all "refinement stable" verdicts: fitted
// constants may move by < 5% under one grid refinement.
inline bool stable_drift(double log_c_base, double log_c_refined) {
  const double tol = 0.04879016417;  // log(1.05)
  return std::abs(log_c_refined - log_c_base) <= tol + 1e-9;
}

}  // namespace tauberlab
