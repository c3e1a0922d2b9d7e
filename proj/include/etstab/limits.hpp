#ifndef ETSTAB_LIMITS_HPP
#define ETSTAB_LIMITS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "etstab/measures.hpp"

namespace etstab {

// Truncated second-moment matrix of small atoms:
//   H^eps = sum over atoms with radius < sqrt(eps) of w * (u u^T) * g0(eps / radius).
// Atoms at infinity never contribute.
Eigen::MatrixXd h_epsilon_matrix(const AtomicMeasure& nu, double alpha, double p, double epsilon,
                                 const QuadratureConfig& cfg = {});

// Pseudometric surrogate for vague convergence on the punctured compactified
// space: max over a dictionary of test functions (vanishing for radius <= delta
// and continuous at the sphere at infinity) of the integral gap.
double vague_distance(const AtomicMeasure& nu1, const AtomicMeasure& nu2, double delta);

// Small-ball masses nu_n(|x| < eps), one row per sequence element.
std::vector<std::vector<double>> no_gauss_diagnostic(const std::vector<AtomicMeasure>& seq,
                                                     const std::vector<double>& epsilons);

struct GaussianMatrixEntry {
  int sequence_index = 0;
  double epsilon = 0.0;
  Eigen::MatrixXd a_plus_h;   // A_n + H_n^eps
  double gap_to_target = 0.0; // max-abs entry gap to the target A
};

// Diagnostics for the three convergence conditions on a finite sequence; the
// report presents trends only, it never fabricates a verdict.
struct ConvergenceReport {
  std::vector<double> epsilons;
  std::vector<double> shift_gaps;        // |b_n - b|
  std::vector<double> vague_distances;   // dictionary distance nu_n vs nu
  std::vector<GaussianMatrixEntry> gaussian_matrices;
  std::vector<std::vector<double>> small_ball_masses;  // [n][eps]
  std::vector<double> tail_radii;                       // radii for the R_n tail table
  std::vector<std::vector<double>> rosinski_tail_functionals;  // [n][radius]
  std::string verdict_notes;
};

inline const std::vector<double>& default_epsilons() {
  static const std::vector<double> eps = {0.5, 0.2, 0.1, 0.05, 0.02};
  return eps;
}
inline constexpr double kDefaultVagueDelta = 0.05;

ConvergenceReport check_limit_conditions(const std::vector<EtsSpec>& seq, const EtsSpec& target,
                                         const std::vector<double>& epsilons = default_epsilons(),
                                         double delta = kDefaultVagueDelta,
                                         const QuadratureConfig& cfg = {});

}  // namespace etstab

#endif  // ETSTAB_LIMITS_HPP
