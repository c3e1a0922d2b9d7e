#ifndef ETSTAB_MEASURES_HPP
#define ETSTAB_MEASURES_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "etstab/common.hpp"

namespace etstab {

// A point of the compactified punctured space: positive radius (possibly
// infinite) and a unit direction. Radius = inf encodes the sphere at infinity.
struct DirPoint {
  double radius = 1.0;
  Eigen::VectorXd direction;

  bool infinite() const { return std::isinf(radius); }
  Eigen::VectorXd embedded() const { return radius * direction; }  // finite points only
};

DirPoint make_dir_point(double radius, Eigen::VectorXd direction);
DirPoint dir_point_from_vector(const Eigen::VectorXd& x);  // x != 0

struct WeightedAtom {
  DirPoint point;
  double weight = 0.0;
};

// Finite weighted atom collection; immutable after construction. Construction
// canonicalizes: atoms equal within 1e-12 in radius (or both infinite) and
// direction are merged, and atoms are ordered by (radius, direction) with
// infinite-radius atoms last.
class AtomicMeasure {
 public:
  explicit AtomicMeasure(int dimension);
  AtomicMeasure(int dimension, std::vector<WeightedAtom> atoms);

  int dimension() const { return dimension_; }
  const std::vector<WeightedAtom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }

  double total_mass() const;
  double mass_within(double radius) const;  // finite atoms with rho < radius
  double mass_at_infinity() const;
  bool has_infinite_atoms() const;

  AtomicMeasure operator+(const AtomicMeasure& other) const;

 private:
  int dimension_ = 0;
  std::vector<WeightedAtom> atoms_;
};

// Spectral atoms on the unit sphere, each with an atomic Bernstein measure on
// [0, infinity); q(r, u) = sum_j w_j e^{-r s_j} is completely monotone by form.
struct BernsteinAtom {
  double s = 0.0;
  double weight = 0.0;
};

struct TemperingEntry {
  Eigen::VectorXd direction;
  double sigma_weight = 0.0;
  std::vector<BernsteinAtom> q_atoms;
};

class TemperingSpec {
 public:
  TemperingSpec(int dimension, std::vector<TemperingEntry> entries);
  int dimension() const { return dimension_; }
  const std::vector<TemperingEntry>& entries() const { return entries_; }

 private:
  int dimension_ = 0;
  std::vector<TemperingEntry> entries_;
};

// Full parameterization: alpha < 2, p > 0, Gaussian covariance, extended
// measure nu on the compactified space, and shift.
class EtsSpec {
 public:
  EtsSpec(double alpha, double p, Eigen::MatrixXd gaussian, AtomicMeasure nu,
          Eigen::VectorXd shift);

  double alpha() const { return alpha_; }
  double p() const { return p_; }
  const Eigen::MatrixXd& gaussian() const { return gaussian_; }
  const AtomicMeasure& nu() const { return nu_; }
  const Eigen::VectorXd& shift() const { return shift_; }
  int dimension() const { return nu_.dimension(); }

 private:
  double alpha_;
  double p_;
  Eigen::MatrixXd gaussian_;
  AtomicMeasure nu_;
  Eigen::VectorXd shift_;
};

struct ValidationReport {
  bool valid = false;
  double mass_functional = 0.0;  // sum of w * (|x|^2 ^ regime term)
  double head_mass = 0.0;        // contribution of atoms with radius < 1
  double tail_mass = 0.0;        // contribution of atoms with radius >= 1
  std::size_t atom_count = 0;
  std::string regime;
  std::string message;
};

// |x|^2 wedged with the regime term: |x|^alpha for alpha in (0,2),
// 1 + log+|x| at alpha = 0, and 1 for alpha < 0.
double radial_weight_wedge(double radius, double alpha);

// rho^alpha / wedge(rho, alpha): the factor converting a nu-atom weight into
// the coefficient of the unit-ray kernel integral of that atom.
double atom_ray_coefficient(double radius, double alpha);

ValidationReport validate_rosinski(const AtomicMeasure& rosinski, double alpha);

AtomicMeasure rosinski_to_extended(const AtomicMeasure& rosinski,
                                   const AtomicMeasure& stable_part, double alpha);
AtomicMeasure rosinski_to_extended(const AtomicMeasure& rosinski, double alpha);

std::pair<AtomicMeasure, AtomicMeasure> extended_to_rosinski(const AtomicMeasure& nu,
                                                             double alpha);

std::pair<AtomicMeasure, AtomicMeasure> tempering_to_rosinski(const TemperingSpec& spec,
                                                              double alpha, double p);

// Integral of f against the Levy measure induced by nu. f must be bounded and
// vanish on a neighborhood of the origin.
double levy_integral(const std::function<double(const Eigen::VectorXd&)>& f,
                     const AtomicMeasure& nu, double alpha, double p,
                     const QuadratureConfig& cfg = {});

// Mass of {|y| > r} under the induced Levy measure.
double levy_tail_mass(const AtomicMeasure& nu, double alpha, double p, double r,
                      const QuadratureConfig& cfg = {});

}  // namespace etstab

#endif  // ETSTAB_MEASURES_HPP
