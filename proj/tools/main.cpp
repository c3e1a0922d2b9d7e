#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "etstab/charfn.hpp"
#include "etstab/io.hpp"
#include "etstab/limits.hpp"
#include "etstab/simulate.hpp"
#include "etstab/special.hpp"

namespace fs = std::filesystem;
using namespace etstab;

namespace {

struct OutputOptions {
  std::string out_path;
  bool quiet = false;
};

void add_common(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--out", opts.out_path, "write the payload to this path instead of stdout");
  cmd->add_flag("--quiet", opts.quiet, "suppress stderr diagnostics");
}

void emit(const OutputOptions& opts, const std::string& payload) {
  if (opts.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output path: " + opts.out_path);
  out << payload;
}

void diag(const OutputOptions& opts, const std::string& line) {
  if (!opts.quiet) std::cerr << line << "\n";
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  Json j;
  in >> j;
  return j;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ",";
    row += cells[i];
  }
  row += "\n";
  return row;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(std::stoi(token));
  }
  if (out.empty()) throw std::invalid_argument("--n-list must contain at least one integer");
  return out;
}

CfGrid grid_or_default(const std::string& path, int dimension) {
  if (path.empty()) return CfGrid::default_grid(dimension);
  return grid_from_json(load_json(path));
}

int run_validate(const std::string& spec_path, const OutputOptions& opts) {
  const Json j = load_json(spec_path);
  Json report;
  bool valid = true;
  try {
    const EtsSpec spec = ets_from_json(j);
    const auto [rosinski, stable] = extended_to_rosinski(spec.nu(), spec.alpha());
    ValidationReport vr = validate_rosinski(rosinski, spec.alpha());
    report = to_json(vr);
    report["dimension"] = spec.dimension();
    report["alpha"] = spec.alpha();
    report["p"] = spec.p();
    report["nu_total_mass"] = spec.nu().total_mass();
    report["stable_direction_mass"] = spec.nu().mass_at_infinity();
    valid = vr.valid;
  } catch (const NotPSD& e) {
    valid = false;
    report = Json{{"valid", false}, {"message", e.what()}};
  } catch (const StablePartForbidden& e) {
    valid = false;
    report = Json{{"valid", false}, {"message", e.what()}};
  }
  emit(opts, report.dump(2) + "\n");
  diag(opts, valid ? "validation passed" : "validation failed");
  return valid ? 0 : 1;
}

int run_cf(const std::string& spec_path, const std::string& grid_path, const OutputOptions& opts) {
  const EtsSpec spec = ets_from_json(load_json(spec_path));
  const CfGrid grid = grid_or_default(grid_path, spec.dimension());
  if (grid.dimension() != spec.dimension()) {
    throw DimensionMismatch("cf: grid dimension does not match the spec");
  }
  std::string payload;
  std::vector<std::string> header;
  for (int i = 1; i <= spec.dimension(); ++i) header.push_back("z" + std::to_string(i));
  header.insert(header.end(), {"re_c", "im_c", "cf_abs"});
  payload += csv_row(header);
  for (const auto& z : grid.points) {
    const auto c = char_exponent(spec, z);
    std::vector<std::string> cells;
    for (Eigen::Index i = 0; i < z.size(); ++i) cells.push_back(format_double(z[i]));
    cells.push_back(format_double(c.real()));
    cells.push_back(format_double(c.imag()));
    cells.push_back(format_double(std::abs(std::exp(c))));
    payload += csv_row(cells);
  }
  emit(opts, payload);
  return 0;
}

int run_transform(const std::string& from, const std::string& to, const std::string& in_path,
                  const std::string& stable_path, double alpha, double p,
                  const OutputOptions& opts) {
  Json payload;
  if (from == "tempering") {
    const TemperingSpec spec = tempering_from_json(load_json(in_path));
    auto [rosinski, stable] = tempering_to_rosinski(spec, alpha, p);
    if (to == "rosinski") {
      payload = Json{{"R", to_json(rosinski)}, {"stable_part", to_json(stable)}};
    } else {
      payload = to_json(rosinski_to_extended(rosinski, stable, alpha));
    }
  } else if (from == "rosinski") {
    if (to != "extended") throw std::invalid_argument("transform: rosinski -> extended only");
    const AtomicMeasure rosinski = measure_from_json(load_json(in_path));
    AtomicMeasure stable(rosinski.dimension());
    if (!stable_path.empty()) stable = measure_from_json(load_json(stable_path));
    payload = to_json(rosinski_to_extended(rosinski, stable, alpha));
  } else if (from == "extended") {
    if (to != "rosinski") throw std::invalid_argument("transform: extended -> rosinski only");
    const AtomicMeasure nu = measure_from_json(load_json(in_path));
    auto [rosinski, stable] = extended_to_rosinski(nu, alpha);
    payload = Json{{"R", to_json(rosinski)}, {"stable_part", to_json(stable)}};
  } else {
    throw std::invalid_argument("transform: --from must be tempering, rosinski or extended");
  }
  emit(opts, payload.dump(2) + "\n");
  return 0;
}

int run_approximate(const std::string& spec_path, int level, const std::string& grid_path,
                    const OutputOptions& opts) {
  const EtsSpec spec = ets_from_json(load_json(spec_path));
  const auto nu_n = discretize_extended_measure(spec.nu(), level, spec.alpha(), spec.p());
  const auto components = to_elementary_sum(nu_n, spec.alpha(), spec.p(), spec.shift());
  const auto shift = elementary_sum_shift(components, spec.alpha(), spec.p(), spec.shift());
  const EtsSpec approx_spec(spec.alpha(), spec.p(),
                            Eigen::MatrixXd::Zero(spec.dimension(), spec.dimension()), nu_n,
                            spec.shift());
  const CfGrid grid = grid_or_default(grid_path, spec.dimension());
  double gap = 0.0;
  // the Gaussian part is carried separately by the approximant, so compare
  // measure parts plus shift only
  const EtsSpec measure_only(spec.alpha(), spec.p(),
                             Eigen::MatrixXd::Zero(spec.dimension(), spec.dimension()), spec.nu(),
                             spec.shift());
  gap = cf_sup_distance(approx_spec, measure_only, grid);
  Json payload{{"n", level},
               {"components", to_json(components)},
               {"aggregate_shift", vector_json(shift)},
               {"cf_sup_gap", gap},
               {"grid_size", grid.points.size()}};
  emit(opts, payload.dump(2) + "\n");
  diag(opts, "components: " + std::to_string(components.size()) +
                 ", cf gap: " + format_double(gap));
  return 0;
}

int run_simulate(const std::string& spec_path, int paths, std::uint64_t seed, double tau,
                 const std::string& grid_path, const std::string& gap_out,
                 const OutputOptions& opts) {
  const EtsSpec spec = ets_from_json(load_json(spec_path));
  SamplerConfig cfg;
  cfg.seed = seed;
  cfg.n_paths = paths;
  cfg.truncation_tau = tau;
  const auto samples = sample_ets(spec, cfg);
  std::string payload;
  std::vector<std::string> header;
  for (int i = 1; i <= spec.dimension(); ++i) header.push_back("x" + std::to_string(i));
  payload += csv_row(header);
  for (Eigen::Index row = 0; row < samples.rows(); ++row) {
    std::vector<std::string> cells;
    for (Eigen::Index colm = 0; colm < samples.cols(); ++colm) {
      cells.push_back(format_double(samples(row, colm)));
    }
    payload += csv_row(cells);
  }
  emit(opts, payload);

  const CfGrid grid = grid_or_default(grid_path, spec.dimension());
  const auto emp = empirical_cf(samples, grid);
  const double envelope = 4.0 / std::sqrt(static_cast<double>(paths));
  std::string gap_csv = csv_row({"gap", "envelope"});
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const auto target = std::exp(char_exponent(spec, grid.points[i]));
    const double gap = std::abs(emp[i] - target);
    worst = std::max(worst, gap);
    gap_csv += csv_row({format_double(gap), format_double(envelope)});
  }
  if (!gap_out.empty()) {
    std::ofstream out(gap_out, std::ios::binary);
    out << gap_csv;
  }
  diag(opts, "sup empirical-CF gap " + format_double(worst) + " (envelope " +
                 format_double(envelope) + ")");
  return 0;
}

int run_check_limit(const std::string& seq_dir, const std::string& target_path,
                    const std::string& epsilons_text, double delta, const std::string& csv_path,
                    const OutputOptions& opts) {
  std::vector<fs::path> files;
  if (!fs::is_directory(seq_dir)) {
    throw std::invalid_argument("check-limit: --sequence must name a directory of spec JSON files");
  }
  for (const auto& entry : fs::directory_iterator(seq_dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::invalid_argument("check-limit: no .json files in the directory");
  std::vector<EtsSpec> seq;
  for (const auto& file : files) seq.push_back(ets_from_json(load_json(file.string())));
  const EtsSpec target = ets_from_json(load_json(target_path));
  std::vector<double> epsilons = default_epsilons();
  if (!epsilons_text.empty()) {
    epsilons.clear();
    std::stringstream ss(epsilons_text);
    std::string token;
    while (std::getline(ss, token, ',')) epsilons.push_back(std::stod(token));
  }
  const auto report = check_limit_conditions(seq, target, epsilons, delta);
  emit(opts, to_json(report).dump(2) + "\n");

  std::ostringstream table;
  table << "  n  shift_gap     vague_dist";
  for (double eps : report.epsilons) table << "   A-gap(eps=" << eps << ")";
  table << "\n";
  std::string csv = csv_row({"n", "shift_gap", "vague_distance", "epsilon", "a_gap"});
  for (std::size_t n = 0; n < seq.size(); ++n) {
    char line[160];
    std::snprintf(line, sizeof(line), "%3zu  %11.4e  %11.4e", n, report.shift_gaps[n],
                  report.vague_distances[n]);
    table << line;
    for (std::size_t e = 0; e < report.epsilons.size(); ++e) {
      const auto& entry = report.gaussian_matrices[n * report.epsilons.size() + e];
      std::snprintf(line, sizeof(line), "  %15.4e", entry.gap_to_target);
      table << line;
      csv += csv_row({std::to_string(n), format_double(report.shift_gaps[n]),
                      format_double(report.vague_distances[n]), format_double(entry.epsilon),
                      format_double(entry.gap_to_target)});
    }
    table << "\n";
  }
  diag(opts, table.str());
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    out << csv;
  }
  return 0;
}

int run_demo_gaussian(double alpha, double p, const std::string& a_path,
                      const std::string& n_list_text, int m_nodes, const OutputOptions& opts) {
  const Json aj = load_json(a_path);
  Eigen::MatrixXd a(aj.size(), aj.size());
  for (std::size_t r = 0; r < aj.size(); ++r) {
    for (std::size_t c = 0; c < aj[r].size(); ++c) a(r, c) = aj[r][c].get<double>();
  }
  const int d = static_cast<int>(a.rows());
  EtsSpec target(alpha, p, a, AtomicMeasure(d), Eigen::VectorXd::Zero(d));
  const CfGrid grid = CfGrid::default_grid(d);
  std::string payload = csv_row({"n", "sup_cf_gap"});
  for (int n : parse_n_list(n_list_text)) {
    const auto seed_spec = gaussian_seed_sequence(a, n, alpha, p, m_nodes);
    const double gap = cf_sup_distance(seed_spec, target, grid);
    payload += csv_row({std::to_string(n), format_double(gap)});
    diag(opts, "n=" + std::to_string(n) + " gap=" + format_double(gap));
  }
  emit(opts, payload);
  return 0;
}

int run_demo_stable(double alpha, double p, const std::string& sigma_path,
                    const std::string& n_list_text, int m_nodes, const OutputOptions& opts) {
  const AtomicMeasure sigma = measure_from_json(load_json(sigma_path));
  const int d = sigma.dimension();
  std::vector<WeightedAtom> inf_atoms;
  for (const auto& atom : sigma.atoms()) {
    inf_atoms.push_back({DirPoint{kInf, atom.point.direction}, atom.weight});
  }
  EtsSpec target(alpha, p, Eigen::MatrixXd::Zero(d, d), AtomicMeasure(d, inf_atoms),
                 Eigen::VectorXd::Zero(d));
  const CfGrid grid = CfGrid::default_grid(d);
  std::string payload = csv_row({"n", "sup_cf_gap"});
  for (int n : parse_n_list(n_list_text)) {
    const auto seed_spec = stable_seed_sequence(sigma, alpha, n, p, m_nodes);
    const double gap = cf_sup_distance(seed_spec, target, grid);
    payload += csv_row({std::to_string(n), format_double(gap)});
    diag(opts, "n=" + std::to_string(n) + " gap=" + format_double(gap));
  }
  emit(opts, payload);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extended tempered stable distributions: transforms, exponents, limits, sampling"};
  app.require_subcommand(1);

  OutputOptions opts;

  std::string spec_path, grid_path, in_path, stable_path, from, to, seq_dir, target_path;
  std::string epsilons_text, csv_path, gap_out, a_path, sigma_path, n_list_text;
  double alpha = 0.5, p = 1.0, delta = kDefaultVagueDelta, tau = 1e-3;
  int level = 8, paths = 1000, m_nodes = 64;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "validate a spec file");
  validate->add_option("spec", spec_path, "EtsSpec JSON file")->required();
  add_common(validate, opts);

  auto* cf = app.add_subcommand("cf", "evaluate the characteristic exponent on a grid");
  cf->add_option("spec", spec_path, "EtsSpec JSON file")->required();
  cf->add_option("--grid", grid_path, "CfGrid JSON file (default grid if omitted)");
  add_common(cf, opts);

  auto* transform = app.add_subcommand("transform", "convert between measure representations");
  transform->add_option("--from", from, "tempering|rosinski|extended")->required();
  transform->add_option("--to", to, "rosinski|extended")->required();
  transform->add_option("input", in_path, "input JSON file")->required();
  transform->add_option("--stable", stable_path, "spherical stable part (rosinski -> extended)");
  transform->add_option("--alpha", alpha, "stability index alpha < 2")->required();
  transform->add_option("--p", p, "tempering power p > 0");
  add_common(transform, opts);

  auto* approximate = app.add_subcommand("approximate", "elementary decomposition at level n");
  approximate->add_option("spec", spec_path, "EtsSpec JSON file")->required();
  approximate->add_option("--n", level, "discretization level")->required();
  approximate->add_option("--grid", grid_path, "CfGrid JSON override");
  add_common(approximate, opts);

  auto* simulate = app.add_subcommand("simulate", "draw sample paths");
  simulate->add_option("spec", spec_path, "EtsSpec JSON file")->required();
  simulate->add_option("--paths", paths, "number of paths")->required();
  simulate->add_option("--seed", seed, "RNG seed")->required();
  simulate->add_option("--tau", tau, "small-jump truncation cutoff");
  simulate->add_option("--grid", grid_path, "CfGrid for the empirical-CF gap table");
  simulate->add_option("--gap-out", gap_out, "write the gap table CSV to this path");
  add_common(simulate, opts);

  auto* check = app.add_subcommand("check-limit", "convergence diagnostics for a sequence");
  check->add_option("--sequence", seq_dir, "directory of spec JSON files")->required();
  check->add_option("--target", target_path, "target spec JSON file")->required();
  check->add_option("--epsilons", epsilons_text, "comma list, strictly decreasing");
  check->add_option("--delta", delta, "vague-distance cutoff");
  check->add_option("--csv", csv_path, "also write the table as CSV");
  add_common(check, opts);

  auto* demo = app.add_subcommand("demo", "constructive limit demos");
  demo->require_subcommand(1);
  auto* demo_gauss = demo->add_subcommand("gaussian-limit", "seed sequence toward N(0, A)");
  demo_gauss->add_option("--alpha", alpha)->required();
  demo_gauss->add_option("--p", p)->required();
  demo_gauss->add_option("--A", a_path, "matrix JSON file")->required();
  demo_gauss->add_option("--n-list", n_list_text, "comma list of indices")->required();
  demo_gauss->add_option("--m-nodes", m_nodes, "quantile nodes per axis");
  add_common(demo_gauss, opts);
  auto* demo_stable = demo->add_subcommand("stable-limit", "seed sequence toward S_alpha(sigma, 0)");
  demo_stable->add_option("--alpha", alpha)->required();
  demo_stable->add_option("--p", p)->required();
  demo_stable->add_option("--sigma", sigma_path, "spherical measure JSON file")->required();
  demo_stable->add_option("--n-list", n_list_text, "comma list of indices")->required();
  demo_stable->add_option("--m-nodes", m_nodes, "radial quantile nodes");
  add_common(demo_stable, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate(spec_path, opts);
    if (cf->parsed()) return run_cf(spec_path, grid_path, opts);
    if (transform->parsed()) {
      return run_transform(from, to, in_path, stable_path, alpha, p, opts);
    }
    if (approximate->parsed()) return run_approximate(spec_path, level, grid_path, opts);
    if (simulate->parsed()) {
      return run_simulate(spec_path, paths, seed, tau, grid_path, gap_out, opts);
    }
    if (check->parsed()) {
      return run_check_limit(seq_dir, target_path, epsilons_text, delta, csv_path, opts);
    }
    if (demo->parsed()) {
      if (demo_gauss->parsed()) {
        return run_demo_gaussian(alpha, p, a_path, n_list_text, m_nodes, opts);
      }
      return run_demo_stable(alpha, p, sigma_path, n_list_text, m_nodes, opts);
    }
  } catch (const QuadratureFailure& e) {
    if (!opts.quiet) std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const DivergentIntegral& e) {
    if (!opts.quiet) std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const Json::exception& e) {
    if (!opts.quiet) std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    if (!opts.quiet) std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
