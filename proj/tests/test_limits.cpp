#include <cmath>
#include <random>

#include "doctest.h"
#include "etstab/approx.hpp"
#include "etstab/charfn.hpp"
#include "etstab/limits.hpp"
#include "etstab/special.hpp"

using namespace etstab;

namespace {

Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}

std::mt19937_64 g_rng(417);

Eigen::VectorXd rand_unit(int d) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXd u(d);
  do {
    for (int i = 0; i < d; ++i) u[i] = n(g_rng);
  } while (u.norm() < 1e-8);
  return u / u.norm();
}

AtomicMeasure rand_nu(int d, int n_atoms, double min_log_r = -4.0, double max_log_r = 1.0) {
  std::uniform_real_distribution<double> logr(min_log_r, max_log_r);
  std::uniform_real_distribution<double> w(0.1, 2.0);
  std::vector<WeightedAtom> atoms;
  for (int i = 0; i < n_atoms; ++i) {
    atoms.push_back({DirPoint{std::exp(logr(g_rng)), rand_unit(d)}, w(g_rng)});
  }
  return AtomicMeasure(d, std::move(atoms));
}

}  // namespace

TEST_CASE("h_epsilon_matrix: zero when all atoms sit above the cutoff") {
  AtomicMeasure nu(2, {{DirPoint{1.0, Eigen::Vector2d(1.0, 0.0)}, 2.0},
                       {DirPoint{kInf, Eigen::Vector2d(0.0, 1.0)}, 1.0}});
  const auto h = h_epsilon_matrix(nu, 0.5, 1.0, 0.25);
  CHECK(h.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("h_epsilon_matrix: scalar example") {
  AtomicMeasure nu(1, {{DirPoint{0.01, vec1(1.0)}, 2.0}});
  const auto h = h_epsilon_matrix(nu, 0.0, 1.0, 0.04);
  const double expect = 2.0 * (1.0 - 5.0 * std::exp(-4.0));
  CHECK(h(0, 0) == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("h_epsilon_matrix: PSD and trace sandwich on random measures") {
  QuadratureConfig cfg;
  std::uniform_real_distribution<double> epsd(0.01, 0.99);
  const double alphas[] = {-1.5, -1.0, 0.0, 0.5, 1.5};
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 3;
    const double alpha = alphas[trial % 5];
    const double p = 0.5 + (trial % 3) * 0.75;
    const auto nu = rand_nu(d, 1 + trial % 6);
    const double eps = epsd(g_rng);
    const auto h = h_epsilon_matrix(nu, alpha, p, eps, cfg);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    const double lower = truncated_gauss_kernel(alpha, p, 1.0, cfg) * nu.mass_within(eps);
    const double upper = truncated_gauss_kernel(alpha, p, kInf, cfg) * nu.mass_within(std::sqrt(eps));
    CHECK(h.trace() >= lower - 1e-10);
    CHECK(h.trace() <= upper + 1e-10);
  }
}

TEST_CASE("h_epsilon_matrix: trace monotone in epsilon once cutoffs clear the atoms") {
  QuadratureConfig cfg;
  const auto nu = rand_nu(2, 4, -4.0, -2.5);  // radii below e^{-2.5} ~ 0.082
  double prev = 0.0;
  for (double eps : {0.01, 0.02, 0.05, 0.1, 0.2}) {
    const double tr = h_epsilon_matrix(nu, 0.5, 1.0, eps, cfg).trace();
    CHECK(tr >= prev - 1e-12);
    prev = tr;
  }
}

TEST_CASE("vague_distance: identity, infinity continuity, delta blindness") {
  const auto nu = rand_nu(2, 5);
  CHECK(vague_distance(nu, nu, 0.05) == 0.0);

  // an atom pushed to larger and larger radius approaches the infinite atom
  Eigen::VectorXd u = Eigen::Vector2d(0.6, 0.8);
  AtomicMeasure at_inf(2, {{DirPoint{kInf, u}, 1.3}});
  double prev = kInf;
  for (double radius : {10.0, 100.0, 1000.0, 10000.0}) {
    AtomicMeasure finite(2, {{DirPoint{radius, u}, 1.3}});
    const double dist = vague_distance(finite, at_inf, 0.05);
    CHECK(dist < prev);
    prev = dist;
  }
  CHECK(prev < 1e-2);

  // mass inside the delta ball is invisible
  AtomicMeasure base = rand_nu(1, 3, -1.0, 1.0);
  AtomicMeasure extra = base + AtomicMeasure(1, {{DirPoint{0.025, vec1(1.0)}, 5.0}});
  CHECK(vague_distance(base, extra, 0.05) == 0.0);

  AtomicMeasure other_dim(3, {{DirPoint{1.0, rand_unit(3)}, 1.0}});
  CHECK_THROWS_AS(vague_distance(base, other_dim, 0.05), DimensionMismatch);
}

TEST_CASE("vague_distance: symmetry and triangle inequality") {
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + trial % 2;
    const auto a = rand_nu(d, 2);
    const auto b = rand_nu(d, 3);
    const auto c = rand_nu(d, 2);
    const double ab = vague_distance(a, b, 0.05);
    const double ba = vague_distance(b, a, 0.05);
    CHECK(ab == doctest::Approx(ba));
    CHECK(ab <= vague_distance(a, c, 0.05) + vague_distance(c, b, 0.05) + 1e-12);
  }
}

TEST_CASE("no_gauss_diagnostic: small-ball masses") {
  {
    const auto nu = rand_nu(1, 4, 0.0, 1.0);  // radii >= 1
    const auto table = no_gauss_diagnostic({nu}, {0.5, 0.2, 0.1});
    for (double mass : table[0]) CHECK(mass == 0.0);
  }
  {
    // nu_n = delta at radius 1/n with weight 1/n
    std::vector<AtomicMeasure> seq;
    for (int n = 1; n <= 64; n *= 2) {
      seq.push_back(AtomicMeasure(1, {{DirPoint{1.0 / n, vec1(1.0)}, 1.0 / n}}));
    }
    const std::vector<double> eps = {0.5, 0.1, 0.02};
    const auto table = no_gauss_diagnostic(seq, eps);
    for (std::size_t e = 0; e < eps.size(); ++e) {
      double sup = 0.0;
      for (const auto& row : table) sup = std::max(sup, row[e]);
      CHECK(sup <= eps[e] * 2.0 + 1e-12);  // sup_n mass vanishes as eps drops
    }
  }
}

TEST_CASE("check_limit_conditions: constant sequence reports zero gaps") {
  AtomicMeasure nu(1, {{DirPoint{1.5, vec1(1.0)}, 0.8}});
  Eigen::MatrixXd a(1, 1);
  a << 0.3;
  EtsSpec spec(0.5, 1.0, a, nu, vec1(0.2));
  const auto report = check_limit_conditions({spec, spec, spec}, spec);
  for (double g : report.shift_gaps) CHECK(g == 0.0);
  for (double v : report.vague_distances) CHECK(v == 0.0);
  for (const auto& entry : report.gaussian_matrices) {
    // H^eps of the 1.5-radius atom is zero for every default epsilon
    CHECK(entry.gap_to_target == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("check_limit_conditions: mismatched parameters are rejected") {
  AtomicMeasure nu(1, {{DirPoint{1.0, vec1(1.0)}, 1.0}});
  EtsSpec a(0.5, 1.0, Eigen::MatrixXd::Zero(1, 1), nu, vec1(0.0));
  EtsSpec b(0.7, 1.0, Eigen::MatrixXd::Zero(1, 1), nu, vec1(0.0));
  CHECK_THROWS_AS(check_limit_conditions({a}, b), ParameterMismatch);
  CHECK_THROWS_AS(check_limit_conditions({a}, a, {0.1, 0.5}), std::invalid_argument);
}

TEST_CASE("check_limit_conditions: Gaussian seed family shows the three decays") {
  QuadratureConfig cfg;
  Eigen::MatrixXd a(1, 1);
  a << 1.0;
  EtsSpec target(0.5, 1.0, a, AtomicMeasure(1), Eigen::VectorXd::Zero(1));
  std::vector<EtsSpec> seq;
  for (int n : {5, 10, 20, 40}) seq.push_back(gaussian_seed_sequence(a, n, 0.5, 1.0, 16, cfg));
  const auto report = check_limit_conditions(seq, target, default_epsilons(), 0.05, cfg);
  for (double g : report.shift_gaps) CHECK(g == 0.0);
  // the dictionary distance to the empty target measure decays
  CHECK(report.vague_distances.back() < report.vague_distances.front());
  CHECK(report.vague_distances.back() < 1e-6);
  // A_n + H_n^eps approaches A as n grows and eps shrinks
  const std::size_t n_eps = report.epsilons.size();
  const double first_gap = report.gaussian_matrices[0].gap_to_target;  // n smallest, eps largest
  const double last_gap = report.gaussian_matrices[seq.size() * n_eps - 1].gap_to_target;
  CHECK(last_gap < first_gap);
  CHECK(last_gap < 0.05);
  // small-ball masses stay bounded away from zero: a Gaussian part is forming
  CHECK(report.small_ball_masses.back().back() > 0.5);
  // the CF distance decays alongside the report trends
  const auto grid = CfGrid::default_grid(1);
  CHECK(cf_sup_distance(seq.back(), target, grid, cfg) <
        cf_sup_distance(seq.front(), target, grid, cfg));
}

TEST_CASE("check_limit_conditions: escaping-mass counterexample keeps small-ball mass up") {
  // atoms drift toward the origin with constant nu-mass: the no-Gauss
  // diagnostic stays bounded away from zero at every epsilon
  std::vector<EtsSpec> seq;
  AtomicMeasure target_nu(1, {{DirPoint{1.0, vec1(1.0)}, 1.0}});
  EtsSpec target(-1.0, 1.0, Eigen::MatrixXd::Zero(1, 1), target_nu, vec1(0.0));
  for (int n = 2; n <= 256; n *= 2) {
    AtomicMeasure nu(1, {{DirPoint{1.0 / n, vec1(1.0)}, 1.0}});
    seq.push_back(EtsSpec(-1.0, 1.0, Eigen::MatrixXd::Zero(1, 1), nu, vec1(0.0)));
  }
  const auto report = check_limit_conditions(seq, target);
  for (std::size_t e = 0; e < report.epsilons.size(); ++e) {
    double sup = 0.0;
    for (const auto& row : report.small_ball_masses) sup = std::max(sup, row[e]);
    CHECK(sup >= 1.0 - 1e-12);  // limsup of the small-ball mass never decays
  }
}
