#include "etstab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "etstab/quadrature.hpp"
#include "etstab/special.hpp"

namespace etstab {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kUnitNormTol = 1e-12;

bool same_radius(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b);
  return std::abs(a - b) <= kMergeTol * std::max({1.0, std::abs(a), std::abs(b)});
}

bool same_direction(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff() <= kMergeTol;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

void check_unit(const Eigen::VectorXd& direction, int dimension) {
  if (direction.size() != dimension) {
    throw DimensionMismatch("direction dimension does not match measure dimension");
  }
  if (std::abs(direction.norm() - 1.0) > kUnitNormTol) {
    throw std::invalid_argument("direction must be a unit vector within 1e-12");
  }
}

// Bound on int_T^inf t^{-1-alpha} e^{-(t/rho)^p} dt, used to stop ray tails.
double ray_kernel_tail_bound(double alpha, double p, double rho, double t_from) {
  double b = kInf;
  if (alpha > 0.0) b = std::pow(t_from, -alpha) / alpha;
  if (!std::isinf(rho)) {
    const double s = -alpha / p;
    const double u = std::pow(t_from / rho, p);
    double gb = kInf;
    if (u >= 1.0 && !(s > 1.0 && u < 2.0 * (s - 1.0))) {
      gb = std::exp((s - 1.0) * std::log(u) - u);
      if (s > 1.0) gb *= 2.0;
      gb *= std::pow(rho, -alpha) / p;
    }
    b = std::min(b, gb);
  }
  return b;
}

// int_0^inf f(t u) t^{-1-alpha} e^{-(t/rho)^p} dt with rho possibly infinite.
double ray_integral(const std::function<double(const Eigen::VectorXd&)>& f,
                    const Eigen::VectorXd& u, double rho, double alpha, double p,
                    const QuadratureConfig& cfg) {
  const bool stable = std::isinf(rho);
  if (alpha >= 0.0) {
    // detectable violation of the vanish-near-zero contract
    const double ref = 1.0 + std::abs(f(u));
    if (std::abs(f(1e-7 * u)) > 1e-12 * ref && std::abs(f(1e-10 * u)) > 1e-12 * ref) {
      throw DivergentIntegral("levy_integral: f does not vanish near the origin");
    }
  }
  double observed_max = 0.0;
  auto g = [&](double t) -> double {
    if (t <= 0.0) return 0.0;
    const double fv = f(t * u);
    if (fv == 0.0) return 0.0;
    observed_max = std::max(observed_max, std::abs(fv));
    const double taper = stable ? 1.0 : std::exp(-std::pow(t / rho, p));
    return fv * std::pow(t, -1.0 - alpha) * taper;
  };
  const double head = detail::integrate_adaptive<double>(g, 0.0, 1.0, cfg, "levy ray head");
  auto bound = [&](double t_from) {
    return 2.0 * std::max(1.0, observed_max) * ray_kernel_tail_bound(alpha, p, rho, t_from);
  };
  const double tail = detail::integrate_doubling<double>(g, 1.0, cfg, bound, "levy ray tail");
  return head + tail;
}

}  // namespace

DirPoint make_dir_point(double radius, Eigen::VectorXd direction) {
  if (!(radius > 0.0)) throw std::invalid_argument("DirPoint radius must be > 0");
  if (std::abs(direction.norm() - 1.0) > kUnitNormTol) {
    throw std::invalid_argument("DirPoint direction must be a unit vector within 1e-12");
  }
  return DirPoint{radius, std::move(direction)};
}

DirPoint dir_point_from_vector(const Eigen::VectorXd& x) {
  const double r = x.norm();
  if (!(r > 0.0)) throw std::invalid_argument("cannot place an atom at the origin");
  return DirPoint{r, x / r};
}

AtomicMeasure::AtomicMeasure(int dimension) : dimension_(dimension) {
  if (dimension < 1) throw std::invalid_argument("AtomicMeasure dimension must be >= 1");
}

AtomicMeasure::AtomicMeasure(int dimension, std::vector<WeightedAtom> atoms)
    : dimension_(dimension) {
  if (dimension < 1) throw std::invalid_argument("AtomicMeasure dimension must be >= 1");
  for (const auto& a : atoms) {
    if (!(a.point.radius > 0.0)) {
      throw std::invalid_argument("atom radius must be > 0 (no mass at the origin)");
    }
    check_unit(a.point.direction, dimension);
    if (!(a.weight > 0.0)) throw std::invalid_argument("atom weight must be > 0");
  }
  std::sort(atoms.begin(), atoms.end(), [](const WeightedAtom& x, const WeightedAtom& y) {
    const bool xi = x.point.infinite(), yi = y.point.infinite();
    if (xi != yi) return yi;  // finite atoms first
    if (!xi && x.point.radius != y.point.radius) return x.point.radius < y.point.radius;
    return lex_less(x.point.direction, y.point.direction);
  });
  for (const auto& a : atoms) {
    if (!atoms_.empty() && same_radius(atoms_.back().point.radius, a.point.radius) &&
        same_direction(atoms_.back().point.direction, a.point.direction)) {
      atoms_.back().weight += a.weight;
    } else {
      atoms_.push_back(a);
    }
  }
}

double AtomicMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight;
  return m;
}

double AtomicMeasure::mass_within(double radius) const {
  double m = 0.0;
  for (const auto& a : atoms_) {
    if (!a.point.infinite() && a.point.radius < radius) m += a.weight;
  }
  return m;
}

double AtomicMeasure::mass_at_infinity() const {
  double m = 0.0;
  for (const auto& a : atoms_) {
    if (a.point.infinite()) m += a.weight;
  }
  return m;
}

bool AtomicMeasure::has_infinite_atoms() const {
  return !atoms_.empty() && atoms_.back().point.infinite();
}

AtomicMeasure AtomicMeasure::operator+(const AtomicMeasure& other) const {
  if (dimension_ != other.dimension_) {
    throw DimensionMismatch("cannot add measures of different dimension");
  }
  std::vector<WeightedAtom> merged = atoms_;
  merged.insert(merged.end(), other.atoms_.begin(), other.atoms_.end());
  return AtomicMeasure(dimension_, std::move(merged));
}

TemperingSpec::TemperingSpec(int dimension, std::vector<TemperingEntry> entries)
    : dimension_(dimension), entries_(std::move(entries)) {
  if (dimension < 1) throw std::invalid_argument("TemperingSpec dimension must be >= 1");
  for (const auto& e : entries_) {
    check_unit(e.direction, dimension);
    if (!(e.sigma_weight > 0.0)) throw std::invalid_argument("sigma_weight must be > 0");
    for (const auto& q : e.q_atoms) {
      if (!(q.s >= 0.0)) throw std::invalid_argument("Bernstein atom s must be >= 0");
      if (!(q.weight > 0.0)) throw std::invalid_argument("Bernstein atom weight must be > 0");
    }
  }
}

EtsSpec::EtsSpec(double alpha, double p, Eigen::MatrixXd gaussian, AtomicMeasure nu,
                 Eigen::VectorXd shift)
    : alpha_(alpha), p_(p), gaussian_(std::move(gaussian)), nu_(std::move(nu)),
      shift_(std::move(shift)) {
  if (!(alpha_ < 2.0)) throw std::invalid_argument("EtsSpec: alpha must be < 2");
  if (!(p_ > 0.0)) throw std::invalid_argument("EtsSpec: p must be > 0");
  const int d = nu_.dimension();
  if (gaussian_.rows() != d || gaussian_.cols() != d || shift_.size() != d) {
    throw DimensionMismatch("EtsSpec: A, nu and b must share one dimension");
  }
  const double scale = 1.0 + gaussian_.cwiseAbs().maxCoeff();
  if ((gaussian_ - gaussian_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw NotPSD("EtsSpec: A is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gaussian_);
  if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw NotPSD("EtsSpec: A has a negative eigenvalue");
  }
  if (alpha_ <= 0.0 && nu_.has_infinite_atoms()) {
    throw StablePartForbidden("EtsSpec: nu may not charge the sphere at infinity when alpha <= 0");
  }
}

double radial_weight_wedge(double radius, double alpha) {
  const double r2 = radius * radius;
  if (alpha > 0.0) return std::min(r2, std::pow(radius, alpha));
  if (alpha == 0.0) return std::min(r2, 1.0 + std::max(0.0, std::log(radius)));
  return std::min(r2, 1.0);
}

double atom_ray_coefficient(double radius, double alpha) {
  if (radius >= 1.0) {
    if (alpha > 0.0) return 1.0;
    if (alpha == 0.0) return 1.0 / (1.0 + std::log(radius));
    return std::pow(radius, alpha);
  }
  return std::pow(radius, alpha - 2.0);
}

ValidationReport validate_rosinski(const AtomicMeasure& rosinski, double alpha) {
  if (!(alpha < 2.0)) throw std::invalid_argument("validate_rosinski: alpha must be < 2");
  if (rosinski.has_infinite_atoms()) {
    throw InfiniteRadiusAtom("validate_rosinski: Rosinski measures place no mass at infinity");
  }
  ValidationReport report;
  report.atom_count = rosinski.size();
  report.regime = alpha > 0.0 ? "alpha in (0,2)" : (alpha == 0.0 ? "alpha = 0" : "alpha < 0");
  for (const auto& a : rosinski.atoms()) {
    const double contrib = a.weight * radial_weight_wedge(a.point.radius, alpha);
    report.mass_functional += contrib;
    (a.point.radius < 1.0 ? report.head_mass : report.tail_mass) += contrib;
  }
  report.valid = std::isfinite(report.mass_functional);
  report.message = report.valid ? "finite atomic measure; integrability conditions hold"
                                : "mass functional is not finite";
  return report;
}

AtomicMeasure rosinski_to_extended(const AtomicMeasure& rosinski,
                                   const AtomicMeasure& stable_part, double alpha) {
  if (!(alpha < 2.0)) throw std::invalid_argument("rosinski_to_extended: alpha must be < 2");
  if (rosinski.dimension() != stable_part.dimension()) {
    throw DimensionMismatch("rosinski_to_extended: dimensions differ");
  }
  if (rosinski.has_infinite_atoms()) {
    throw InfiniteRadiusAtom("rosinski_to_extended: R has an atom at infinity");
  }
  if (!stable_part.empty() && !(alpha > 0.0)) {
    throw StablePartForbidden("rosinski_to_extended: stable part requires alpha in (0,2)");
  }
  std::vector<WeightedAtom> atoms;
  atoms.reserve(rosinski.size() + stable_part.size());
  for (const auto& a : rosinski.atoms()) {
    atoms.push_back({a.point, a.weight * radial_weight_wedge(a.point.radius, alpha)});
  }
  for (const auto& a : stable_part.atoms()) {
    if (std::abs(a.point.radius - 1.0) > 1e-9) {
      throw std::invalid_argument("rosinski_to_extended: stable part must live on the unit sphere");
    }
    atoms.push_back({DirPoint{kInf, a.point.direction}, a.weight});
  }
  return AtomicMeasure(rosinski.dimension(), std::move(atoms));
}

AtomicMeasure rosinski_to_extended(const AtomicMeasure& rosinski, double alpha) {
  return rosinski_to_extended(rosinski, AtomicMeasure(rosinski.dimension()), alpha);
}

std::pair<AtomicMeasure, AtomicMeasure> extended_to_rosinski(const AtomicMeasure& nu,
                                                             double alpha) {
  if (!(alpha < 2.0)) throw std::invalid_argument("extended_to_rosinski: alpha must be < 2");
  if (nu.has_infinite_atoms() && !(alpha > 0.0)) {
    throw StablePartForbidden("extended_to_rosinski: infinite atoms require alpha in (0,2)");
  }
  std::vector<WeightedAtom> r_atoms;
  std::vector<WeightedAtom> s_atoms;
  for (const auto& a : nu.atoms()) {
    if (a.point.infinite()) {
      s_atoms.push_back({DirPoint{1.0, a.point.direction}, a.weight});
    } else {
      r_atoms.push_back({a.point, a.weight / radial_weight_wedge(a.point.radius, alpha)});
    }
  }
  return {AtomicMeasure(nu.dimension(), std::move(r_atoms)),
          AtomicMeasure(nu.dimension(), std::move(s_atoms))};
}

std::pair<AtomicMeasure, AtomicMeasure> tempering_to_rosinski(const TemperingSpec& spec,
                                                              double alpha, double p) {
  if (!(alpha < 2.0)) throw std::invalid_argument("tempering_to_rosinski: alpha must be < 2");
  if (!(p > 0.0)) throw std::invalid_argument("tempering_to_rosinski: p must be > 0");
  std::vector<WeightedAtom> r_atoms;
  std::vector<WeightedAtom> s_atoms;
  for (const auto& e : spec.entries()) {
    for (const auto& q : e.q_atoms) {
      if (q.s == 0.0) {
        if (!(alpha > 0.0)) {
          throw StablePartForbidden(
              "tempering_to_rosinski: an s = 0 Bernstein atom requires alpha in (0,2)");
        }
        s_atoms.push_back({DirPoint{1.0, e.direction}, e.sigma_weight * q.weight});
      } else {
        const double radius = std::pow(q.s, -1.0 / p);
        const double weight = e.sigma_weight * q.weight * std::pow(q.s, alpha / p);
        r_atoms.push_back({DirPoint{radius, e.direction}, weight});
      }
    }
  }
  return {AtomicMeasure(spec.dimension(), std::move(r_atoms)),
          AtomicMeasure(spec.dimension(), std::move(s_atoms))};
}

double levy_integral(const std::function<double(const Eigen::VectorXd&)>& f,
                     const AtomicMeasure& nu, double alpha, double p,
                     const QuadratureConfig& cfg) {
  check_config(cfg);
  if (!(alpha < 2.0)) throw std::invalid_argument("levy_integral: alpha must be < 2");
  if (!(p > 0.0)) throw std::invalid_argument("levy_integral: p must be > 0");
  double total = 0.0;
  for (const auto& a : nu.atoms()) {
    if (a.point.infinite()) {
      if (!(alpha > 0.0)) {
        throw StablePartForbidden("levy_integral: infinite atoms require alpha in (0,2)");
      }
      total += a.weight * ray_integral(f, a.point.direction, kInf, alpha, p, cfg);
    } else {
      const double coef = atom_ray_coefficient(a.point.radius, alpha);
      total += a.weight * coef * ray_integral(f, a.point.direction, a.point.radius, alpha, p, cfg);
    }
  }
  return total;
}

double levy_tail_mass(const AtomicMeasure& nu, double alpha, double p, double r,
                      const QuadratureConfig& cfg) {
  check_config(cfg);
  if (!(r > 0.0)) throw std::invalid_argument("levy_tail_mass: r must be > 0");
  if (!(alpha < 2.0)) throw std::invalid_argument("levy_tail_mass: alpha must be < 2");
  if (!(p > 0.0)) throw std::invalid_argument("levy_tail_mass: p must be > 0");
  double total = 0.0;
  for (const auto& a : nu.atoms()) {
    if (a.point.infinite()) {
      if (!(alpha > 0.0)) {
        throw StablePartForbidden("levy_tail_mass: infinite atoms require alpha in (0,2)");
      }
      total += a.weight * std::pow(r, -alpha) / alpha;
    } else {
      const double rho = a.point.radius;
      const double coef = atom_ray_coefficient(rho, alpha);
      const double s = -alpha / p;
      const double radial =
          std::pow(rho, -alpha) * detail::gamma_integral(s, std::pow(r / rho, p), kInf, cfg) / p;
      total += a.weight * coef * radial;
    }
  }
  return total;
}

}  // namespace etstab
