#include "etstab/charfn.hpp"

#include <cmath>
#include <stdexcept>

#include "etstab/special.hpp"

namespace etstab {

namespace {

double radical_inverse(int base, int index) {
  double inv = 1.0 / base;
  double digit = inv;
  double value = 0.0;
  while (index > 0) {
    value += digit * (index % base);
    index /= base;
    digit *= inv;
  }
  return value;
}

}  // namespace

void CfGrid::validate() const {
  if (points.empty()) throw std::invalid_argument("CfGrid must be nonempty");
  const int d = dimension();
  bool has_origin = false;
  for (const auto& z : points) {
    if (z.size() != d) throw DimensionMismatch("CfGrid points have mixed dimensions");
    if (z.cwiseAbs().maxCoeff() == 0.0) has_origin = true;
  }
  if (!has_origin) throw std::invalid_argument("CfGrid must contain z = 0");
}

CfGrid CfGrid::default_grid(int dimension) {
  if (dimension < 1) throw std::invalid_argument("CfGrid dimension must be >= 1");
  CfGrid grid;
  if (dimension <= 2) {
    const int per_axis = 13;
    auto axis_value = [&](int i) { return -3.0 + 6.0 * i / (per_axis - 1.0); };
    if (dimension == 1) {
      for (int i = 0; i < per_axis; ++i) {
        Eigen::VectorXd z(1);
        z << axis_value(i);
        grid.points.push_back(z);
      }
    } else {
      for (int i = 0; i < per_axis; ++i) {
        for (int j = 0; j < per_axis; ++j) {
          Eigen::VectorXd z(2);
          z << axis_value(i), axis_value(j);
          grid.points.push_back(z);
        }
      }
    }
  } else {
    const int bases[] = {2, 3, 5, 7, 11, 13};
    grid.points.push_back(Eigen::VectorXd::Zero(dimension));
    for (int k = 1; k < 500; ++k) {
      Eigen::VectorXd z(dimension);
      for (int axis = 0; axis < dimension; ++axis) {
        z[axis] = -3.0 + 6.0 * radical_inverse(bases[axis % 6], k);
      }
      grid.points.push_back(z);
    }
  }
  return grid;
}

std::complex<double> char_exponent(const EtsSpec& spec, const Eigen::VectorXd& z,
                                   const QuadratureConfig& cfg) {
  if (z.size() != spec.dimension()) {
    throw DimensionMismatch("char_exponent: z dimension does not match the spec");
  }
  if (!z.allFinite()) throw std::invalid_argument("char_exponent: z must be finite");
  if (z.cwiseAbs().maxCoeff() == 0.0) return {0.0, 0.0};
  std::complex<double> total(-0.5 * z.dot(spec.gaussian() * z), spec.shift().dot(z));
  const double alpha = spec.alpha();
  const double p = spec.p();
  for (const auto& atom : spec.nu().atoms()) {
    const double s = atom.point.direction.dot(z);
    if (atom.point.infinite()) {
      total += atom.weight * levy_oscillatory_integral(s, alpha, p, kInf, cfg);
    } else {
      const double coef = atom_ray_coefficient(atom.point.radius, alpha);
      total += atom.weight * coef *
               levy_oscillatory_integral(s, alpha, p, atom.point.radius, cfg);
    }
  }
  return total;
}

EtsSpec convolve(const EtsSpec& lhs, const EtsSpec& rhs) {
  if (lhs.alpha() != rhs.alpha() || lhs.p() != rhs.p()) {
    throw ParameterMismatch("convolve: alpha and p must match exactly");
  }
  if (lhs.dimension() != rhs.dimension()) {
    throw ParameterMismatch("convolve: dimensions must match");
  }
  return EtsSpec(lhs.alpha(), lhs.p(), lhs.gaussian() + rhs.gaussian(), lhs.nu() + rhs.nu(),
                 lhs.shift() + rhs.shift());
}

double cf_sup_distance(const EtsSpec& lhs, const EtsSpec& rhs, const CfGrid& grid,
                       const QuadratureConfig& cfg) {
  if (lhs.dimension() != rhs.dimension()) {
    throw DimensionMismatch("cf_sup_distance: spec dimensions differ");
  }
  grid.validate();
  if (grid.dimension() != lhs.dimension()) {
    throw DimensionMismatch("cf_sup_distance: grid dimension does not match the specs");
  }
  double sup = 0.0;
  for (const auto& z : grid.points) {
    const auto cf1 = std::exp(char_exponent(lhs, z, cfg));
    const auto cf2 = std::exp(char_exponent(rhs, z, cfg));
    sup = std::max(sup, std::abs(cf1 - cf2));
  }
  return sup;
}

}  // namespace etstab
