#include <cmath>
#include <random>

#include "doctest.h"
#include "etstab/io.hpp"

using namespace etstab;

namespace {

Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}

}  // namespace

TEST_CASE("measure JSON: schema field names and infinity encoding") {
  AtomicMeasure nu(2, {{DirPoint{1.25, Eigen::Vector2d(0.6, 0.8)}, 0.5},
                       {DirPoint{kInf, Eigen::Vector2d(1.0, 0.0)}, 2.0}});
  const Json j = to_json(nu);
  CHECK(j.at("dimension") == 2);
  REQUIRE(j.at("atoms").size() == 2);
  CHECK(j["atoms"][0].at("radius") == 1.25);
  CHECK(j["atoms"][0].contains("direction"));
  CHECK(j["atoms"][0].contains("weight"));
  CHECK(j["atoms"][1].at("radius") == "inf");
  const auto back = measure_from_json(j);
  REQUIRE(back.size() == 2);
  CHECK(back.atoms()[1].point.infinite());
}

TEST_CASE("measure JSON: doubles survive a round trip bit-exactly") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> logr(-6.0, 6.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<WeightedAtom> atoms;
  for (int i = 0; i < 24; ++i) {
    Eigen::VectorXd u(3);
    do {
      for (int k = 0; k < 3; ++k) u[k] = normal(rng);
    } while (u.norm() < 1e-8);
    u /= u.norm();
    atoms.push_back({DirPoint{std::exp(logr(rng)), u}, std::exp(logr(rng))});
  }
  AtomicMeasure nu(3, atoms);
  const std::string text = to_json(nu).dump();
  const auto back = measure_from_json(Json::parse(text));
  REQUIRE(back.size() == nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) {
    CHECK(back.atoms()[i].point.radius == nu.atoms()[i].point.radius);
    CHECK(back.atoms()[i].weight == nu.atoms()[i].weight);
    CHECK((back.atoms()[i].point.direction - nu.atoms()[i].point.direction).cwiseAbs().maxCoeff() ==
          0.0);
  }
}

TEST_CASE("EtsSpec JSON round trip") {
  AtomicMeasure nu(2, {{DirPoint{0.7, Eigen::Vector2d(0.0, 1.0)}, 1.5}});
  Eigen::MatrixXd a(2, 2);
  a << 0.5, 0.1, 0.1, 0.4;
  Eigen::VectorXd b(2);
  b << 0.25, -1.0;
  EtsSpec spec(0.8, 1.5, a, nu, b);
  const auto back = ets_from_json(to_json(spec));
  CHECK(back.alpha() == spec.alpha());
  CHECK(back.p() == spec.p());
  CHECK((back.gaussian() - a).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.shift() - b).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.nu().atoms()[0].weight == 1.5);
}

TEST_CASE("TemperingSpec JSON round trip and dimension inference") {
  TemperingSpec spec(2, {{Eigen::Vector2d(1.0, 0.0), 0.9, {{0.0, 0.4}, {2.0, 1.0}}}});
  const Json j = to_json(spec);
  CHECK(j.contains("entries"));
  const auto back = tempering_from_json(j);
  CHECK(back.dimension() == 2);
  REQUIRE(back.entries().size() == 1);
  CHECK(back.entries()[0].q_atoms.size() == 2);
  CHECK_THROWS_AS(tempering_from_json(Json{{"entries", Json::array()}}), std::invalid_argument);
}

TEST_CASE("grid and component JSON") {
  CfGrid grid;
  grid.points = {vec1(0.0), vec1(-1.5)};
  const auto grid_back = grid_from_json(to_json(grid));
  CHECK(grid_back.points.size() == 2);

  std::vector<ElementaryComponent> comps = {{1.5, vec1(2.0), 0.1}};
  const auto comps_back = components_from_json(to_json(comps));
  REQUIRE(comps_back.size() == 1);
  CHECK(comps_back[0].c == 1.5);
  CHECK(comps_back[0].x[0] == 2.0);
  CHECK(comps_back[0].b_scalar == 0.1);
}

TEST_CASE("format_double: shortest round-trip representation") {
  for (double x : {1.0, -0.1, 0.26424111765711535, 1e300, 2.5e-300}) {
    const std::string s = format_double(x);
    CHECK(std::stod(s) == x);
    CHECK(s.size() <= 24);
  }
}
