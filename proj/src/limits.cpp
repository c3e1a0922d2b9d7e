#include "etstab/limits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "etstab/special.hpp"

namespace etstab {

namespace {

// Dictionary of products h_j(1/radius) * g_k(direction). The radial hats live
// on a geometric grid of 1/radius over [0, 1/delta]; the node at 0 is what an
// atom on the sphere at infinity sees. Every function vanishes for
// 1/radius >= 1/delta, i.e. on {radius <= delta}.
class TestDictionary {
 public:
  TestDictionary(int dimension, double delta) : dimension_(dimension) {
    const double top = 1.0 / delta;
    nodes_.push_back(0.0);
    for (int k = kRadialNodes - 2; k >= 0; --k) nodes_.push_back(top * std::pow(2.0, -k));
    // direction monomials of degree <= 2
    dir_funcs_.push_back([](const Eigen::VectorXd&) { return 1.0; });
    for (int i = 0; i < dimension; ++i) {
      dir_funcs_.push_back([i](const Eigen::VectorXd& u) { return u[i]; });
    }
    for (int i = 0; i < dimension; ++i) {
      for (int j = i; j < dimension; ++j) {
        dir_funcs_.push_back([i, j](const Eigen::VectorXd& u) { return u[i] * u[j]; });
      }
    }
  }

  int radial_count() const { return kRadialNodes - 1; }  // hats at nodes 0 .. m-2
  int direction_count() const { return static_cast<int>(dir_funcs_.size()); }
  int size() const { return radial_count() * direction_count(); }

  double hat(int j, double w) const {
    const double center = nodes_[j];
    const double left = (j == 0) ? nodes_[0] : nodes_[j - 1];
    const double right = nodes_[j + 1];
    if (w <= left || w >= right) return (j == 0 && w == left) ? 1.0 : 0.0;
    if (w <= center) return (center == left) ? 1.0 : (w - left) / (center - left);
    return (right - w) / (right - center);
  }

  double value(int idx, const WeightedAtom& atom) const {
    const int j = idx % radial_count();
    const int k = idx / radial_count();
    const double w = atom.point.infinite() ? 0.0 : 1.0 / atom.point.radius;
    const double h = hat(j, w);
    if (h == 0.0) return 0.0;
    return h * dir_funcs_[k](atom.point.direction);
  }

  double integral(int idx, const AtomicMeasure& nu) const {
    double total = 0.0;
    for (const auto& atom : nu.atoms()) total += atom.weight * value(idx, atom);
    return total;
  }

 private:
  static constexpr int kRadialNodes = 8;
  int dimension_;
  std::vector<double> nodes_;
  std::vector<std::function<double(const Eigen::VectorXd&)>> dir_funcs_;
};

}  // namespace

Eigen::MatrixXd h_epsilon_matrix(const AtomicMeasure& nu, double alpha, double p, double epsilon,
                                 const QuadratureConfig& cfg) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("h_epsilon_matrix: epsilon must be > 0");
  const int d = nu.dimension();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  const double cutoff = std::sqrt(epsilon);
  for (const auto& atom : nu.atoms()) {
    if (atom.point.infinite() || atom.point.radius >= cutoff) continue;
    const double g0 = truncated_gauss_kernel(alpha, p, epsilon / atom.point.radius, cfg);
    h += atom.weight * g0 * (atom.point.direction * atom.point.direction.transpose());
  }
  return h;
}

double vague_distance(const AtomicMeasure& nu1, const AtomicMeasure& nu2, double delta) {
  if (nu1.dimension() != nu2.dimension()) {
    throw DimensionMismatch("vague_distance: measures have different dimensions");
  }
  if (!(delta > 0.0)) throw std::invalid_argument("vague_distance: delta must be > 0");
  const TestDictionary dict(nu1.dimension(), delta);
  double dist = 0.0;
  for (int idx = 0; idx < dict.size(); ++idx) {
    dist = std::max(dist, std::abs(dict.integral(idx, nu1) - dict.integral(idx, nu2)));
  }
  return dist;
}

std::vector<std::vector<double>> no_gauss_diagnostic(const std::vector<AtomicMeasure>& seq,
                                                     const std::vector<double>& epsilons) {
  std::vector<std::vector<double>> table;
  table.reserve(seq.size());
  for (const auto& nu : seq) {
    std::vector<double> row;
    row.reserve(epsilons.size());
    for (double eps : epsilons) row.push_back(nu.mass_within(eps));
    table.push_back(std::move(row));
  }
  return table;
}

ConvergenceReport check_limit_conditions(const std::vector<EtsSpec>& seq, const EtsSpec& target,
                                         const std::vector<double>& epsilons, double delta,
                                         const QuadratureConfig& cfg) {
  if (seq.empty()) throw std::invalid_argument("check_limit_conditions: empty sequence");
  if (epsilons.empty()) throw std::invalid_argument("check_limit_conditions: no epsilons");
  for (std::size_t i = 0; i + 1 < epsilons.size(); ++i) {
    if (!(epsilons[i] > epsilons[i + 1]) || !(epsilons[i + 1] > 0.0)) {
      throw std::invalid_argument("check_limit_conditions: epsilons must be strictly decreasing and positive");
    }
  }
  for (const auto& spec : seq) {
    if (spec.alpha() != target.alpha() || spec.p() != target.p() ||
        spec.dimension() != target.dimension()) {
      throw ParameterMismatch("check_limit_conditions: all specs must share (alpha, p, dimension)");
    }
  }
  const double alpha = target.alpha();
  const double p = target.p();

  ConvergenceReport report;
  report.epsilons = epsilons;
  report.tail_radii = {1.0, 10.0, 100.0, 1000.0};
  std::vector<AtomicMeasure> nus;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    const auto& spec = seq[n];
    nus.push_back(spec.nu());
    report.shift_gaps.push_back((spec.shift() - target.shift()).norm());
    report.vague_distances.push_back(vague_distance(spec.nu(), target.nu(), delta));
    for (double eps : epsilons) {
      GaussianMatrixEntry entry;
      entry.sequence_index = static_cast<int>(n);
      entry.epsilon = eps;
      entry.a_plus_h = spec.gaussian() + h_epsilon_matrix(spec.nu(), alpha, p, eps, cfg);
      entry.gap_to_target = (entry.a_plus_h - target.gaussian()).cwiseAbs().maxCoeff();
      report.gaussian_matrices.push_back(std::move(entry));
    }
    // tail functionals of the Rosinski measure (stable part excluded)
    const auto [rosinski, stable] = extended_to_rosinski(spec.nu(), alpha);
    std::vector<double> tails;
    for (double radius : report.tail_radii) {
      double t = 0.0;
      for (const auto& atom : rosinski.atoms()) {
        if (atom.point.radius <= radius) continue;
        if (alpha > 0.0) {
          t += atom.weight * std::pow(atom.point.radius, alpha);
        } else if (alpha == 0.0) {
          t += atom.weight * std::log(atom.point.radius);
        } else {
          t += atom.weight;
        }
      }
      tails.push_back(t);
    }
    report.rosinski_tail_functionals.push_back(std::move(tails));
  }
  report.small_ball_masses = no_gauss_diagnostic(nus, epsilons);
  report.verdict_notes =
      "finite-sample diagnostics; trends are reported, no convergence verdict is decided";
  return report;
}

}  // namespace etstab
