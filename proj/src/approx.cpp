#include "etstab/approx.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "etstab/special.hpp"

namespace etstab {

namespace detail {

// Acklam's rational approximation, polished with one Halley step on erfc.
double normal_quantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) {
    throw std::invalid_argument("normal_quantile: prob must lie in (0,1)");
  }
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (prob < plow) {
    const double q = std::sqrt(-2.0 * std::log(prob));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (prob <= 1.0 - plow) {
    const double q = prob - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - prob));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - prob;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace detail

namespace {

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// Conditional means of the standard normal on m equal-mass cells.
std::vector<double> normal_cell_means(int m) {
  std::vector<double> bounds(m + 1);
  bounds[0] = -kInf;
  bounds[m] = kInf;
  for (int i = 1; i < m; ++i) bounds[i] = detail::normal_quantile(static_cast<double>(i) / m);
  std::vector<double> means(m);
  for (int i = 0; i < m; ++i) {
    const double lo = std::isinf(bounds[i]) ? 0.0 : normal_pdf(bounds[i]);
    const double hi = std::isinf(bounds[i + 1]) ? 0.0 : normal_pdf(bounds[i + 1]);
    means[i] = m * (lo - hi);
  }
  return means;
}

// Conditional means of the unit exponential on m equal-mass cells.
std::vector<double> exponential_cell_means(int m) {
  auto antider = [](double t) { return (1.0 + t) * std::exp(-t); };  // -d/dt t e^{-t} piece
  std::vector<double> means(m);
  double lo = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == m - 1) {
      means[i] = lo + 1.0;  // memoryless tail
    } else {
      const double hi = -std::log1p(-static_cast<double>(i + 1) / m);
      means[i] = m * (antider(lo) - antider(hi));
      lo = hi;
    }
  }
  return means;
}

}  // namespace

AtomicMeasure discretize_extended_measure(const AtomicMeasure& nu, int n, double alpha, double p) {
  if (n < 1) throw std::invalid_argument("discretize_extended_measure: n must be >= 1");
  (void)alpha;
  (void)p;
  const double floor_radius = 1.0 / n;
  const double pushed_radius = std::pow(2.0, n);
  std::vector<WeightedAtom> atoms;
  for (const auto& atom : nu.atoms()) {
    if (atom.point.infinite()) {
      atoms.push_back({DirPoint{pushed_radius, atom.point.direction}, atom.weight});
    } else if (atom.point.radius >= floor_radius) {
      atoms.push_back(atom);
    }
  }
  return AtomicMeasure(nu.dimension(), std::move(atoms));
}

std::vector<ElementaryComponent> to_elementary_sum(const AtomicMeasure& nu_finite, double alpha,
                                                   double p, const Eigen::VectorXd& shift) {
  if (nu_finite.has_infinite_atoms()) {
    throw InfiniteRadiusAtom("to_elementary_sum: discretize the measure first (infinite atom)");
  }
  if (shift.size() != nu_finite.dimension()) {
    throw DimensionMismatch("to_elementary_sum: shift dimension mismatch");
  }
  (void)p;
  const auto [rosinski, stable] = extended_to_rosinski(nu_finite, alpha);
  std::vector<ElementaryComponent> components;
  components.reserve(rosinski.size());
  for (const auto& atom : rosinski.atoms()) {
    components.push_back({atom.weight, atom.point.radius * atom.point.direction, 0.0});
  }
  return components;
}

Eigen::VectorXd elementary_sum_shift(const std::vector<ElementaryComponent>& components,
                                     double alpha, double p, const Eigen::VectorXd& shift,
                                     const QuadratureConfig& cfg) {
  Eigen::VectorXd total = shift;
  for (const auto& comp : components) {
    const double rho = comp.x.norm();
    if (!(rho > 0.0)) throw std::invalid_argument("elementary_sum_shift: component with x = 0");
    total += comp.c * centering_shift_integral(alpha, p, rho, cfg) * comp.x;
    total += comp.b_scalar * comp.x;
  }
  return total;
}

AtomicMeasure gaussian_seed_rosinski(const Eigen::MatrixXd& a, int n, double alpha, double p,
                                     int m_nodes, const QuadratureConfig& cfg) {
  if (n < 1) throw std::invalid_argument("gaussian_seed_rosinski: n must be >= 1");
  if (m_nodes < 8 || m_nodes % 2 != 0) {
    throw std::invalid_argument("gaussian_seed_rosinski: m_nodes must be even and >= 8");
  }
  const int d = static_cast<int>(a.rows());
  if (a.cols() != d) throw DimensionMismatch("gaussian_seed_rosinski: A must be square");
  if (d > 3) throw std::invalid_argument("gaussian_seed_rosinski: product rule covers d <= 3");
  const double scale = 1.0 + a.cwiseAbs().maxCoeff();
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw NotPSD("gaussian_seed_rosinski: A is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw NotPSD("gaussian_seed_rosinski: A has a negative eigenvalue");
  }

  const double c = 1.0 / tempered_power_integral(alpha, p, 0.0, kInf, 2, cfg);
  const auto means = normal_cell_means(m_nodes);

  // principal axes carrying mass
  std::vector<Eigen::VectorXd> axes;
  for (int i = 0; i < d; ++i) {
    const double lambda = es.eigenvalues()[i];
    if (lambda > 1e-14 * scale) {
      axes.push_back(std::sqrt(c * lambda) * es.eigenvectors().col(i));
    }
  }
  std::vector<WeightedAtom> atoms;
  if (!axes.empty()) {
    const int d_eff = static_cast<int>(axes.size());
    const double cell_weight =
        static_cast<double>(n) * n / std::pow(static_cast<double>(m_nodes), d_eff);
    std::vector<int> idx(d_eff, 0);
    while (true) {
      Eigen::VectorXd y = Eigen::VectorXd::Zero(d);
      for (int k = 0; k < d_eff; ++k) y += means[idx[k]] * axes[k];
      y /= n;
      if (y.norm() > 0.0) atoms.push_back({dir_point_from_vector(y), cell_weight});
      int k = 0;
      while (k < d_eff && ++idx[k] == m_nodes) idx[k++] = 0;
      if (k == d_eff) break;
    }
  }
  return AtomicMeasure(d, std::move(atoms));
}

EtsSpec gaussian_seed_sequence(const Eigen::MatrixXd& a, int n, double alpha, double p,
                               int m_nodes, const QuadratureConfig& cfg) {
  const auto rosinski = gaussian_seed_rosinski(a, n, alpha, p, m_nodes, cfg);
  const int d = rosinski.dimension();
  return EtsSpec(alpha, p, Eigen::MatrixXd::Zero(d, d), rosinski_to_extended(rosinski, alpha),
                 Eigen::VectorXd::Zero(d));
}

AtomicMeasure stable_seed_rosinski(const AtomicMeasure& sigma, double alpha, int n, double p,
                                   int m_nodes) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw StableExponentOutOfRange("stable_seed_rosinski: alpha must lie in (0,2)");
  }
  if (n < 1 || m_nodes < 1) {
    throw std::invalid_argument("stable_seed_rosinski: n and m_nodes must be >= 1");
  }
  if (!(p > 0.0)) throw std::invalid_argument("stable_seed_rosinski: p must be > 0");
  const auto means = exponential_cell_means(m_nodes);
  std::vector<WeightedAtom> atoms;
  for (const auto& atom : sigma.atoms()) {
    if (std::abs(atom.point.radius - 1.0) > 1e-9) {
      throw std::invalid_argument("stable_seed_rosinski: sigma must live on the unit sphere");
    }
    for (int i = 0; i < m_nodes; ++i) {
      const double t = means[i];
      const double radius = t * n;
      const double weight = atom.weight * std::pow(radius, -alpha) / m_nodes;
      atoms.push_back({DirPoint{radius, atom.point.direction}, weight});
    }
  }
  return AtomicMeasure(sigma.dimension(), std::move(atoms));
}

EtsSpec stable_seed_sequence(const AtomicMeasure& sigma, double alpha, int n, double p,
                             int m_nodes) {
  const auto rosinski = stable_seed_rosinski(sigma, alpha, n, p, m_nodes);
  const int d = rosinski.dimension();
  return EtsSpec(alpha, p, Eigen::MatrixXd::Zero(d, d), rosinski_to_extended(rosinski, alpha),
                 Eigen::VectorXd::Zero(d));
}

}  // namespace etstab
