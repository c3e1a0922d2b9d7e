#ifndef ETSTAB_CHARFN_HPP
#define ETSTAB_CHARFN_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "etstab/measures.hpp"

namespace etstab {

// Evaluation grid in z-space. Must be nonempty and contain the origin, which
// anchors characteristic-function distances.
struct CfGrid {
  std::vector<Eigen::VectorXd> points;

  int dimension() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
  void validate() const;

  // Tensor grid on [-3,3] with 13 points per axis for d <= 2; 500 Halton
  // points (first replaced by the origin) for d >= 3.
  static CfGrid default_grid(int dimension);
};

// Characteristic exponent C(z) with C(0) = 0, C(-z) = conj(C(z)), Re C <= 0.
std::complex<double> char_exponent(const EtsSpec& spec, const Eigen::VectorXd& z,
                                   const QuadratureConfig& cfg = {});

// Component-wise sum of triplets; requires equal (alpha, p, dimension).
EtsSpec convolve(const EtsSpec& lhs, const EtsSpec& rhs);

// sup over the grid of |exp(C1(z)) - exp(C2(z))|; a weak-convergence surrogate.
double cf_sup_distance(const EtsSpec& lhs, const EtsSpec& rhs, const CfGrid& grid,
                       const QuadratureConfig& cfg = {});

}  // namespace etstab

#endif  // ETSTAB_CHARFN_HPP
