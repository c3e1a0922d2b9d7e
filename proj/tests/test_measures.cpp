#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "etstab/measures.hpp"
#include "etstab/quadrature.hpp"

using namespace etstab;

namespace {

Eigen::VectorXd unit1(double sign) {
  Eigen::VectorXd u(1);
  u << sign;
  return u;
}

Eigen::VectorXd random_unit(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd u(d);
  do {
    for (int i = 0; i < d; ++i) u[i] = normal(rng);
  } while (u.norm() < 1e-8);
  return u / u.norm();
}

AtomicMeasure random_measure(int d, int n_atoms, bool allow_inf, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> logr(-3.0, 3.0);
  std::uniform_real_distribution<double> logw(-2.0, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<WeightedAtom> atoms;
  for (int i = 0; i < n_atoms; ++i) {
    const bool inf_atom = allow_inf && coin(rng) < 0.25;
    const double radius = inf_atom ? kInf : std::exp(logr(rng));
    atoms.push_back({DirPoint{radius, random_unit(d, rng)}, std::exp(logw(rng))});
  }
  return AtomicMeasure(d, std::move(atoms));
}

// Direct quadrature of the tempering representation: per spectral atom,
// int_0^inf f(r u) q(r^p, u) r^{-alpha-1} dr with q in Bernstein form.
double tempering_levy_oracle(const std::function<double(const Eigen::VectorXd&)>& f,
                             const TemperingSpec& spec, double alpha, double p,
                             const QuadratureConfig& cfg) {
  double total = 0.0;
  for (const auto& e : spec.entries()) {
    auto integrand = [&](double r) -> double {
      if (r <= 0.0) return 0.0;
      const double fv = f(r * e.direction);
      if (fv == 0.0) return 0.0;
      double q = 0.0;
      for (const auto& atom : e.q_atoms) q += atom.weight * std::exp(-std::pow(r, p) * atom.s);
      return fv * q * std::pow(r, -alpha - 1.0);
    };
    const double head = detail::integrate_adaptive<double>(integrand, 0.0, 1.0, cfg, "oracle head");
    auto bound = [&](double upper) {
      double q0 = 0.0;
      for (const auto& atom : e.q_atoms) q0 += atom.weight * std::exp(-std::pow(upper, p) * atom.s);
      return alpha > 0.0 ? 2.0 * q0 * std::pow(upper, -alpha) / alpha : kInf;
    };
    const double tail = detail::integrate_doubling<double>(integrand, 1.0, cfg, bound, "oracle tail");
    total += e.sigma_weight * (head + tail);
  }
  return total;
}

double smoothstep_above(double x, double lo, double hi) {
  if (x <= lo) return 0.0;
  if (x >= hi) return 1.0;
  const double t = (x - lo) / (hi - lo);
  return t * t * (3.0 - 2.0 * t);
}

}  // namespace

TEST_CASE("AtomicMeasure: canonicalization merges and orders atoms") {
  std::vector<WeightedAtom> atoms;
  atoms.push_back({DirPoint{2.0, unit1(1.0)}, 1.0});
  atoms.push_back({DirPoint{2.0, unit1(1.0)}, 0.5});
  atoms.push_back({DirPoint{kInf, unit1(-1.0)}, 0.25});
  atoms.push_back({DirPoint{0.5, unit1(-1.0)}, 2.0});
  AtomicMeasure m(1, atoms);
  REQUIRE(m.size() == 3);
  CHECK(m.atoms()[0].point.radius == 0.5);
  CHECK(m.atoms()[1].point.radius == 2.0);
  CHECK(m.atoms()[1].weight == doctest::Approx(1.5));
  CHECK(m.atoms()[2].point.infinite());
  CHECK(m.total_mass() == doctest::Approx(3.75));
  CHECK(m.mass_at_infinity() == doctest::Approx(0.25));
  CHECK(m.mass_within(1.0) == doctest::Approx(2.0));
}

TEST_CASE("AtomicMeasure: invalid atoms are rejected") {
  CHECK_THROWS_AS(AtomicMeasure(1, {{DirPoint{0.0, unit1(1.0)}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(AtomicMeasure(1, {{DirPoint{1.0, unit1(1.0)}, -1.0}}), std::invalid_argument);
  Eigen::VectorXd bad(1);
  bad << 1.5;
  CHECK_THROWS_AS(AtomicMeasure(1, {{DirPoint{1.0, bad}, 1.0}}), std::invalid_argument);
}

TEST_CASE("validate_rosinski: wedge functional per regime") {
  {
    AtomicMeasure r(1, {{DirPoint{2.0, unit1(1.0)}, 3.0}});
    const auto report = validate_rosinski(r, -1.0);
    CHECK(report.valid);
    CHECK(report.mass_functional == doctest::Approx(3.0));  // 3 * min(4, 1)
  }
  for (double alpha : {-1.0, 0.0, 0.5, 1.5}) {
    AtomicMeasure r(1, {{DirPoint{1.0, unit1(1.0)}, 1.0}});
    CHECK(validate_rosinski(r, alpha).mass_functional == doctest::Approx(1.0));
  }
  {
    const auto report = validate_rosinski(AtomicMeasure(2), 0.5);
    CHECK(report.valid);
    CHECK(report.mass_functional == 0.0);
  }
}

TEST_CASE("rosinski_to_extended: regime wedges and stable transfer") {
  {
    AtomicMeasure r(1, {{DirPoint{2.0, unit1(1.0)}, 1.0}});
    const auto nu = rosinski_to_extended(r, 0.5);
    CHECK(nu.atoms()[0].weight == doctest::Approx(std::sqrt(2.0)));  // 4 ^ sqrt2
  }
  for (double alpha : {-1.0, 0.0, 1.0}) {
    AtomicMeasure r(2, {{DirPoint{1.0, Eigen::Vector2d(0.0, 1.0)}, 5.0}});
    const auto nu = rosinski_to_extended(r, alpha);
    CHECK(nu.atoms()[0].weight == doctest::Approx(5.0));
  }
  {
    AtomicMeasure r(1);
    AtomicMeasure stable(1, {{DirPoint{1.0, unit1(1.0)}, 2.0}});
    const auto nu = rosinski_to_extended(r, stable, 1.0);
    REQUIRE(nu.size() == 1);
    CHECK(nu.atoms()[0].point.infinite());
    CHECK(nu.atoms()[0].weight == doctest::Approx(2.0));
    CHECK_THROWS_AS(rosinski_to_extended(r, stable, -0.5), StablePartForbidden);
    CHECK_THROWS_AS(rosinski_to_extended(r, stable, 0.0), StablePartForbidden);
  }
}

TEST_CASE("extended_to_rosinski: inverse examples") {
  {
    AtomicMeasure nu(1, {{DirPoint{2.0, unit1(1.0)}, std::sqrt(2.0)}});
    const auto [r, stable] = extended_to_rosinski(nu, 0.5);
    CHECK(r.atoms()[0].weight == doctest::Approx(1.0));
    CHECK(stable.empty());
  }
  {
    AtomicMeasure nu(1, {{DirPoint{kInf, unit1(1.0)}, 2.0}});
    const auto [r, stable] = extended_to_rosinski(nu, 1.0);
    CHECK(r.empty());
    REQUIRE(stable.size() == 1);
    CHECK(stable.atoms()[0].point.radius == doctest::Approx(1.0));
    CHECK(stable.atoms()[0].weight == doctest::Approx(2.0));
    CHECK_THROWS_AS(extended_to_rosinski(nu, -1.0), StablePartForbidden);
  }
  {
    const auto [r, stable] = extended_to_rosinski(AtomicMeasure(3), 0.5);
    CHECK(r.empty());
    CHECK(stable.empty());
  }
}

TEST_CASE("round trip: extended_to_rosinski after rosinski_to_extended is the identity") {
  std::mt19937_64 rng(2024);
  const double alphas[] = {-1.0, 0.0, 0.5, 1.5};
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = alphas[trial % 4];
    const int d = 1 + trial % 3;
    const auto r = random_measure(d, 1 + trial % 5, false, rng);
    AtomicMeasure stable(d);
    if (alpha > 0.0 && trial % 2 == 0) {
      stable = AtomicMeasure(d, {{DirPoint{1.0, random_unit(d, rng)}, 0.7}});
    }
    const auto nu = rosinski_to_extended(r, stable, alpha);
    const auto [r2, s2] = extended_to_rosinski(nu, alpha);
    REQUIRE(r2.size() == r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(r2.atoms()[i].point.radius == doctest::Approx(r.atoms()[i].point.radius).epsilon(1e-12));
      CHECK(r2.atoms()[i].weight == doctest::Approx(r.atoms()[i].weight).epsilon(1e-12));
    }
    REQUIRE(s2.size() == stable.size());
    for (std::size_t i = 0; i < stable.size(); ++i) {
      CHECK(s2.atoms()[i].weight == doctest::Approx(stable.atoms()[i].weight).epsilon(1e-12));
    }
  }
}

TEST_CASE("tempering_to_rosinski: atom mapping") {
  Eigen::VectorXd u = unit1(1.0);
  {
    TemperingSpec spec(1, {{u, 1.0, {{1.0, 1.0}}}});
    const auto [r, stable] = tempering_to_rosinski(spec, 0.7, 1.3);
    REQUIRE(r.size() == 1);
    CHECK(r.atoms()[0].point.radius == doctest::Approx(1.0));
    CHECK(r.atoms()[0].weight == doctest::Approx(1.0));
    CHECK(stable.empty());
  }
  {
    TemperingSpec spec(1, {{u, 1.0, {{4.0, 1.0}}}});
    const auto [r, stable] = tempering_to_rosinski(spec, 1.0, 2.0);
    CHECK(r.atoms()[0].point.radius == doctest::Approx(0.5));
    CHECK(r.atoms()[0].weight == doctest::Approx(2.0));
  }
  {
    TemperingSpec spec(1, {{u, 3.0, {{0.0, 1.0}}}});
    const auto [r, stable] = tempering_to_rosinski(spec, 1.5, 1.0);
    CHECK(r.empty());
    CHECK(stable.atoms()[0].weight == doctest::Approx(3.0));
    CHECK_THROWS_AS(tempering_to_rosinski(spec, -0.5, 1.0), StablePartForbidden);
  }
}

TEST_CASE("tempering_to_rosinski: Levy integrals agree with the direct representation") {
  QuadratureConfig cfg;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> logs(-1.5, 1.5);
  std::uniform_real_distribution<double> wdist(0.2, 2.0);
  const double alphas[] = {-1.0, 0.0, 0.5, 1.5};
  const double ps[] = {0.5, 1.0, 2.0};
  auto f = [](const Eigen::VectorXd& y) {
    const double r = y.norm();
    return smoothstep_above(r, 0.05, 0.15) * std::exp(-0.3 * r) * (1.0 + 0.5 * y[0] / std::max(r, 1e-300));
  };
  for (int trial = 0; trial < 8; ++trial) {
    const double alpha = alphas[trial % 4];
    const double p = ps[trial % 3];
    const int d = 1 + trial % 2;
    std::vector<TemperingEntry> entries;
    const int n_entries = 1 + trial % 3;
    for (int e = 0; e < n_entries; ++e) {
      TemperingEntry entry;
      entry.direction = random_unit(d, rng);
      entry.sigma_weight = wdist(rng);
      const int nq = 1 + (trial + e) % 3;
      for (int q = 0; q < nq; ++q) entry.q_atoms.push_back({std::exp(logs(rng)), wdist(rng)});
      entries.push_back(entry);
    }
    TemperingSpec spec(d, entries);
    const double direct = tempering_levy_oracle(f, spec, alpha, p, cfg);
    const auto [r, stable] = tempering_to_rosinski(spec, alpha, p);
    const auto nu = rosinski_to_extended(r, stable, alpha);
    const double via_rosinski = levy_integral(f, nu, alpha, p, cfg);
    CHECK(std::abs(direct - via_rosinski) < 1e-6 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("levy_integral: radial examples") {
  QuadratureConfig cfg;
  auto indicator = [](const Eigen::VectorXd& y) { return y.norm() >= 1.0 ? 1.0 : 0.0; };
  {
    AtomicMeasure nu(1, {{DirPoint{1.0, unit1(1.0)}, 1.0}});
    CHECK(levy_integral(indicator, nu, -1.0, 1.0, cfg) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-7));
  }
  {
    CHECK(levy_integral(indicator, AtomicMeasure(2), 0.5, 1.0, cfg) == 0.0);
  }
  {
    AtomicMeasure nu(1, {{DirPoint{kInf, unit1(1.0)}, 1.0}});
    CHECK(levy_integral(indicator, nu, 1.0, 1.0, cfg) == doctest::Approx(1.0).epsilon(1e-7));
  }
  {
    // f that does not vanish near the origin is rejected for alpha >= 0
    AtomicMeasure nu(1, {{DirPoint{1.0, unit1(1.0)}, 1.0}});
    auto ones = [](const Eigen::VectorXd&) { return 1.0; };
    CHECK_THROWS_AS(levy_integral(ones, nu, 0.5, 1.0, cfg), DivergentIntegral);
    // ...but is integrable for alpha < 0
    CHECK(levy_integral(ones, nu, -1.0, 1.0, cfg) == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("levy_integral: additive in nu") {
  QuadratureConfig cfg;
  std::mt19937_64 rng(5);
  auto f = [](const Eigen::VectorXd& y) {
    const double r = y.norm();
    return smoothstep_above(r, 0.04, 0.1) / (1.0 + r * r);
  };
  for (int trial = 0; trial < 5; ++trial) {
    const int d = 1 + trial % 2;
    const auto nu1 = random_measure(d, 2, false, rng);
    const auto nu2 = random_measure(d, 3, false, rng);
    const double alpha = -1.0 + trial;
    if (!(alpha < 2.0)) break;
    const double lhs = levy_integral(f, nu1 + nu2, alpha, 1.0, cfg);
    const double rhs = levy_integral(f, nu1, alpha, 1.0, cfg) + levy_integral(f, nu2, alpha, 1.0, cfg);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("levy_tail_mass: examples, monotonicity, uniqueness surrogate") {
  QuadratureConfig cfg;
  {
    AtomicMeasure nu(1, {{DirPoint{1.0, unit1(1.0)}, 1.0}});
    CHECK(levy_tail_mass(nu, -1.0, 1.0, 1.0, cfg) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    CHECK(levy_tail_mass(nu, -1.0, 1.0, 30.0, cfg) < 1e-9);
    double prev = kInf;
    for (double r : {0.5, 1.0, 2.0, 4.0}) {
      const double m = levy_tail_mass(nu, -1.0, 1.0, r, cfg);
      CHECK(m <= prev + 1e-12);
      prev = m;
    }
  }
  {
    AtomicMeasure nu(2, {{DirPoint{kInf, Eigen::Vector2d(1.0, 0.0)}, 0.8}});
    CHECK(levy_tail_mass(nu, 1.0, 1.0, 2.0, cfg) == doctest::Approx(0.4).epsilon(1e-12));
  }
  {
    // a 1e-3 weight difference is detectable in some tail mass
    AtomicMeasure nu1(1, {{DirPoint{2.0, unit1(1.0)}, 1.0}});
    AtomicMeasure nu2(1, {{DirPoint{2.0, unit1(1.0)}, 1.0 + 1e-3}});
    double best = 0.0;
    for (double r : {0.5, 1.0, 2.0, 4.0}) {
      best = std::max(best, std::abs(levy_tail_mass(nu1, 0.5, 1.0, r, cfg) -
                                     levy_tail_mass(nu2, 0.5, 1.0, r, cfg)));
    }
    CHECK(best > 1e-9);
  }
}

TEST_CASE("EtsSpec: construction guards") {
  AtomicMeasure nu(2, {{DirPoint{1.0, Eigen::Vector2d(1.0, 0.0)}, 1.0}});
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(2);
  CHECK_NOTHROW(EtsSpec(0.5, 1.0, a, nu, b));
  CHECK_THROWS_AS(EtsSpec(2.0, 1.0, a, nu, b), std::invalid_argument);
  CHECK_THROWS_AS(EtsSpec(0.5, 0.0, a, nu, b), std::invalid_argument);
  Eigen::MatrixXd neg = -Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(EtsSpec(0.5, 1.0, neg, nu, b), NotPSD);
  Eigen::MatrixXd asym = a;
  asym(0, 1) = 0.5;
  CHECK_THROWS_AS(EtsSpec(0.5, 1.0, asym, nu, b), NotPSD);
  AtomicMeasure nu_inf(2, {{DirPoint{kInf, Eigen::Vector2d(1.0, 0.0)}, 1.0}});
  CHECK_THROWS_AS(EtsSpec(-0.5, 1.0, a, nu_inf, b), StablePartForbidden);
  CHECK_NOTHROW(EtsSpec(0.5, 1.0, a, nu_inf, b));
}
