#include "etstab/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace etstab {

namespace {

Eigen::VectorXd vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a JSON matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) throw std::invalid_argument("ragged JSON matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
    }
  }
  return m;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json j = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    j.push_back(row);
  }
  return j;
}

double radius_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw std::invalid_argument("radius must be a number or \"inf\"");
  }
  return j.get<double>();
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

Json to_json(const AtomicMeasure& measure) {
  Json atoms = Json::array();
  for (const auto& atom : measure.atoms()) {
    Json entry;
    if (atom.point.infinite()) {
      entry["radius"] = "inf";
    } else {
      entry["radius"] = atom.point.radius;
    }
    entry["direction"] = vector_to_json(atom.point.direction);
    entry["weight"] = atom.weight;
    atoms.push_back(entry);
  }
  return Json{{"dimension", measure.dimension()}, {"atoms", atoms}};
}

AtomicMeasure measure_from_json(const Json& j) {
  const int dimension = j.at("dimension").get<int>();
  std::vector<WeightedAtom> atoms;
  for (const auto& entry : j.at("atoms")) {
    WeightedAtom atom;
    atom.point.radius = radius_from_json(entry.at("radius"));
    atom.point.direction = vector_from_json(entry.at("direction"));
    atom.weight = entry.at("weight").get<double>();
    atoms.push_back(std::move(atom));
  }
  return AtomicMeasure(dimension, std::move(atoms));
}

Json to_json(const EtsSpec& spec) {
  return Json{{"alpha", spec.alpha()},
              {"p", spec.p()},
              {"A", matrix_to_json(spec.gaussian())},
              {"b", vector_to_json(spec.shift())},
              {"nu", to_json(spec.nu())}};
}

EtsSpec ets_from_json(const Json& j) {
  return EtsSpec(j.at("alpha").get<double>(), j.at("p").get<double>(),
                 matrix_from_json(j.at("A")), measure_from_json(j.at("nu")),
                 vector_from_json(j.at("b")));
}

Json to_json(const TemperingSpec& spec) {
  Json entries = Json::array();
  for (const auto& e : spec.entries()) {
    Json q_atoms = Json::array();
    for (const auto& q : e.q_atoms) q_atoms.push_back({{"s", q.s}, {"weight", q.weight}});
    entries.push_back({{"direction", vector_to_json(e.direction)},
                       {"sigma_weight", e.sigma_weight},
                       {"q_atoms", q_atoms}});
  }
  return Json{{"entries", entries}};
}

TemperingSpec tempering_from_json(const Json& j) {
  const auto& entries_json = j.at("entries");
  if (!entries_json.is_array() || entries_json.empty()) {
    throw std::invalid_argument("TemperingSpec requires a nonempty entries array");
  }
  std::vector<TemperingEntry> entries;
  for (const auto& ej : entries_json) {
    TemperingEntry entry;
    entry.direction = vector_from_json(ej.at("direction"));
    entry.sigma_weight = ej.at("sigma_weight").get<double>();
    for (const auto& qj : ej.at("q_atoms")) {
      entry.q_atoms.push_back({qj.at("s").get<double>(), qj.at("weight").get<double>()});
    }
    entries.push_back(std::move(entry));
  }
  const int dimension = static_cast<int>(entries.front().direction.size());
  return TemperingSpec(dimension, std::move(entries));
}

Json to_json(const CfGrid& grid) {
  Json points = Json::array();
  for (const auto& z : grid.points) points.push_back(vector_to_json(z));
  return Json{{"points", points}};
}

CfGrid grid_from_json(const Json& j) {
  CfGrid grid;
  for (const auto& pj : j.at("points")) grid.points.push_back(vector_from_json(pj));
  grid.validate();
  return grid;
}

Json to_json(const std::vector<ElementaryComponent>& components) {
  Json j = Json::array();
  for (const auto& comp : components) {
    j.push_back({{"c", comp.c}, {"x", vector_to_json(comp.x)}, {"b_scalar", comp.b_scalar}});
  }
  return j;
}

std::vector<ElementaryComponent> components_from_json(const Json& j) {
  std::vector<ElementaryComponent> components;
  for (const auto& cj : j) {
    components.push_back({cj.at("c").get<double>(), vector_from_json(cj.at("x")),
                          cj.at("b_scalar").get<double>()});
  }
  return components;
}

Json to_json(const ValidationReport& report) {
  return Json{{"valid", report.valid},
              {"regime", report.regime},
              {"mass_functional", report.mass_functional},
              {"head_mass", report.head_mass},
              {"tail_mass", report.tail_mass},
              {"atom_count", report.atom_count},
              {"message", report.message}};
}

Json to_json(const ConvergenceReport& report) {
  Json gaussian = Json::array();
  for (const auto& entry : report.gaussian_matrices) {
    gaussian.push_back({{"n_index", entry.sequence_index},
                        {"epsilon", entry.epsilon},
                        {"a_plus_h", matrix_to_json(entry.a_plus_h)},
                        {"gap_to_target", entry.gap_to_target}});
  }
  return Json{{"epsilons", report.epsilons},
              {"shift_gaps", report.shift_gaps},
              {"vague_distances", report.vague_distances},
              {"gaussian_matrices", gaussian},
              {"small_ball_masses", report.small_ball_masses},
              {"tail_radii", report.tail_radii},
              {"rosinski_tail_functionals", report.rosinski_tail_functionals},
              {"verdict_notes", report.verdict_notes}};
}

}  // namespace etstab
