#ifndef ETSTAB_APPROX_HPP
#define ETSTAB_APPROX_HPP

#include <Eigen/Dense>
#include <vector>

#include "etstab/measures.hpp"

namespace etstab {

// One elementary building block: the scalar variable with Levy density
// c 1_{t>0} t^{-1-alpha} e^{-t^p}, shifted by b_scalar, multiplied into the
// direction-scale vector x.
struct ElementaryComponent {
  double c = 0.0;
  Eigen::VectorXd x;
  double b_scalar = 0.0;
};

// Finite-support surrogate of nu at level n: finite atoms with radius >= 1/n
// are kept, every infinite atom moves to radius 2^n, atoms below 1/n are
// dropped. The output never charges the origin or the sphere at infinity.
AtomicMeasure discretize_extended_measure(const AtomicMeasure& nu, int n, double alpha, double p);

// Decompose a finite-support nu (no infinite atoms) into elementary
// components: one component per Rosinski atom, c = atom weight, x = atom
// position, b_scalar = 0. The caller carries the global shift.
std::vector<ElementaryComponent> to_elementary_sum(const AtomicMeasure& nu_finite, double alpha,
                                                   double p, const Eigen::VectorXd& shift);

// The vector shift making the independent sum of the components match the
// exponent of ETS(0, nu, shift): base shift plus the per-component centering
// gaps c * kappa(|x|) * x.
Eigen::VectorXd elementary_sum_shift(const std::vector<ElementaryComponent>& components,
                                     double alpha, double p, const Eigen::VectorXd& shift,
                                     const QuadratureConfig& cfg = {});

// Gaussian-target seed at index n: a quantile discretization of N(0, cA) with
// c = 1 / integral of r^{1-alpha} e^{-r^p}, scaled by radius /n and weight n^2.
// m_nodes is the per-axis node count (even, >= 8); the product rule covers
// d <= 3.
EtsSpec gaussian_seed_sequence(const Eigen::MatrixXd& a, int n, double alpha, double p,
                               int m_nodes, const QuadratureConfig& cfg = {});

// Stable-target seed at index n (alpha in (0,2)): per spectral direction the
// radial measure e^{-t} t^{-alpha} dt is discretized on equal-mass cells of its
// t^alpha reweighting (a unit exponential), nodes at conditional means; then
// radius scales by n and weight by n^{-alpha}.
EtsSpec stable_seed_sequence(const AtomicMeasure& sigma, double alpha, int n, double p,
                             int m_nodes);

// The underlying scaled Rosinski measures, exposed for bookkeeping tests and
// diagnostics.
AtomicMeasure gaussian_seed_rosinski(const Eigen::MatrixXd& a, int n, double alpha, double p,
                                     int m_nodes, const QuadratureConfig& cfg = {});
AtomicMeasure stable_seed_rosinski(const AtomicMeasure& sigma, double alpha, int n, double p,
                                   int m_nodes);

namespace detail {
double normal_quantile(double prob);  // inverse standard normal CDF
}

}  // namespace etstab

#endif  // ETSTAB_APPROX_HPP
