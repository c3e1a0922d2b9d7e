#include "etstab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "etstab/quadrature.hpp"
#include "etstab/special.hpp"

namespace etstab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

// c * int t^{-alpha} e^{-t^p} / (1+t^2) over [lo, hi]; the centering drift.
double centering_piece(double alpha, double p, double lo, double hi, const QuadratureConfig& cfg) {
  auto f = [=](double t) {
    if (t <= 0.0) return 0.0;
    return std::pow(t, -alpha) * std::exp(-std::pow(t, p)) / (1.0 + t * t);
  };
  double head = 0.0;
  double from = lo;
  const double split = std::min(hi, 1.0);
  if (lo < split) {
    head = detail::integrate_adaptive<double>(f, lo, split, cfg, "centering piece");
    from = split;
  }
  if (from >= hi) return head;
  if (std::isinf(hi)) {
    auto bound = [=](double upper) {
      // integrand <= t^{-alpha} e^{-t^p}
      const double s = (1.0 - alpha) / p;
      const double u = std::pow(upper, p);
      if (u < 1.0 || (s > 1.0 && u < 2.0 * (s - 1.0))) return kInf;
      double b = std::exp((s - 1.0) * std::log(u) - u) / p;
      if (s > 1.0) b *= 2.0;
      return b;
    };
    return head + detail::integrate_doubling<double>(f, from, cfg, bound, "centering tail");
  }
  return head + detail::integrate_adaptive<double>(f, from, hi, cfg, "centering piece");
}

// cubic Hermite value of the cumulative mass on [t0, t1]
double hermite_cdf(double t, double t0, double t1, double f0, double f1, double d0, double d1) {
  const double h = t1 - t0;
  const double u = (t - t0) / h;
  const double u2 = u * u;
  const double u3 = u2 * u;
  return f0 * (2 * u3 - 3 * u2 + 1) + h * d0 * (u3 - 2 * u2 + u) + f1 * (-2 * u3 + 3 * u2) +
         h * d1 * (u3 - u2);
}

}  // namespace

void check_sampler_config(const SamplerConfig& cfg) {
  if (!(cfg.truncation_tau > 0.0)) {
    throw std::invalid_argument("SamplerConfig: truncation_tau must be > 0");
  }
  if (cfg.n_paths < 1) throw std::invalid_argument("SamplerConfig: n_paths must be >= 1");
}

SubstreamRng::SubstreamRng(std::uint64_t seed, std::uint64_t component, std::uint64_t path) {
  const std::uint64_t k0 = mix64(seed ^ 0x8FB3C5A1D2E4F607ULL);
  const std::uint64_t k1 = mix64(k0 + kGolden * (component + 1));
  key_ = mix64(k1 + kGolden * (path + 1));
}

std::uint64_t SubstreamRng::next_u64() {
  counter_ += 1;
  return mix64(key_ + counter_ * kGolden);
}

double SubstreamRng::next_unit() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double SubstreamRng::next_normal() {
  const double u1 = next_unit();
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double SubstreamRng::next_gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("next_gamma: shape must be > 0");
  if (shape < 1.0) {
    return next_gamma(shape + 1.0) * std::pow(next_unit(), 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x, v;
    do {
      x = next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_unit();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

long SubstreamRng::next_poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("next_poisson: mean must be >= 0");
  long total = 0;
  while (mean > 400.0) {  // additive split keeps exp(-mean) in range
    double half = 200.0;
    const double limit = std::exp(-half);
    double prod = 1.0;
    long k = 0;
    do {
      ++k;
      prod *= next_unit();
    } while (prod > limit);
    total += k - 1;
    mean -= half;
  }
  const double limit = std::exp(-mean);
  double prod = 1.0;
  long k = 0;
  do {
    ++k;
    prod *= next_unit();
  } while (prod > limit);
  return total + k - 1;
}

ElementarySampler::ElementarySampler(double c, double alpha, double p, double b_scalar,
                                     double tau, const QuadratureConfig& cfg)
    : alpha_(alpha), p_(p) {
  if (!(c > 0.0)) throw std::invalid_argument("ElementarySampler: c must be > 0");
  if (!(alpha < 2.0)) throw std::invalid_argument("ElementarySampler: alpha must be < 2");
  if (!(p > 0.0)) throw std::invalid_argument("ElementarySampler: p must be > 0");
  exact_ = alpha < 0.0;
  if (exact_) {
    gamma_shape_ = -alpha / p;
    lambda_ = c * tempered_power_integral(alpha, p, 0.0, kInf, 0, cfg);
    drift_ = b_scalar - c * centering_piece(alpha, p, 0.0, kInf, cfg);
    return;
  }
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("ElementarySampler: truncation_tau must lie in (0,1)");
  }
  lambda_ = c * tempered_power_integral(alpha, p, tau, kInf, 0, cfg);
  const double small_var = c * tempered_power_integral(alpha, p, 0.0, tau, 2, cfg);
  sigma_small_ = small_var > 1e-18 ? std::sqrt(small_var) : 0.0;
  // first cumulant of the compensated small jumps: c * int_0^tau t^{2-alpha} e^{-t^p}/(1+t^2)
  auto small_mean_f = [=](double t) {
    if (t <= 0.0) return 0.0;
    return std::pow(t, 2.0 - alpha) * std::exp(-std::pow(t, p)) / (1.0 + t * t);
  };
  const double small_mean =
      c * detail::integrate_adaptive<double>(small_mean_f, 0.0, tau, cfg, "small-jump mean");
  drift_ = b_scalar + small_mean - c * centering_piece(alpha, p, tau, kInf, cfg);

  // jump table: geometric nodes from tau out to a negligible-tail radius
  double t_end = std::max(2.0, 2.0 * tau);
  while (c * tempered_power_integral(alpha, p, t_end, kInf, 0, cfg) > 1e-16 * lambda_) {
    t_end *= 2.0;
  }
  const int cells = 1024;
  const double ratio = std::pow(t_end / tau, 1.0 / cells);
  node_t_.resize(cells + 1);
  node_pdf_.resize(cells + 1);
  node_cdf_.resize(cells + 1);
  for (int i = 0; i <= cells; ++i) {
    const double t = tau * std::pow(ratio, i);
    node_t_[i] = t;
    node_pdf_[i] = c * std::pow(t, -1.0 - alpha) * std::exp(-std::pow(t, p));
  }
  node_cdf_[0] = 0.0;
  auto dens = [=](double t) { return c * std::pow(t, -1.0 - alpha) * std::exp(-std::pow(t, p)); };
  for (int i = 0; i < cells; ++i) {
    const auto panel = detail::gk15<double>(dens, node_t_[i], node_t_[i + 1]);
    node_cdf_[i + 1] = node_cdf_[i] + panel.value;
  }
}

double ElementarySampler::invert_jump(double unit) const {
  const double target = unit * node_cdf_.back();
  auto it = std::upper_bound(node_cdf_.begin(), node_cdf_.end(), target);
  std::size_t hi = std::min<std::size_t>(node_cdf_.size() - 1,
                                         static_cast<std::size_t>(it - node_cdf_.begin()));
  if (hi == 0) hi = 1;
  const std::size_t lo = hi - 1;
  double a = node_t_[lo], b = node_t_[hi];
  // bisection on the monotone Hermite interpolant of the tabulated mass
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (a + b);
    const double value = hermite_cdf(mid, node_t_[lo], node_t_[hi], node_cdf_[lo], node_cdf_[hi],
                                     node_pdf_[lo], node_pdf_[hi]);
    (value < target ? a : b) = mid;
    if (b - a < 1e-12 * std::max(1.0, a)) break;
  }
  return 0.5 * (a + b);
}

double ElementarySampler::draw(SubstreamRng& rng) const {
  double value = drift_;
  const long jumps = rng.next_poisson(lambda_);
  if (exact_) {
    for (long j = 0; j < jumps; ++j) {
      value += std::pow(rng.next_gamma(gamma_shape_), 1.0 / p_);
    }
    return value;
  }
  for (long j = 0; j < jumps; ++j) value += invert_jump(rng.next_unit());
  if (sigma_small_ > 0.0) value += sigma_small_ * rng.next_normal();
  return value;
}

double sample_elementary(const ElementaryComponent& component, double alpha, double p,
                         const SamplerConfig& cfg, const QuadratureConfig& qcfg) {
  check_sampler_config(cfg);
  ElementarySampler sampler(component.c, alpha, p, component.b_scalar, cfg.truncation_tau, qcfg);
  SubstreamRng rng(cfg.seed, 0, 0);
  return sampler.draw(rng);
}

std::vector<double> sample_elementary_paths(const ElementaryComponent& component, double alpha,
                                            double p, const SamplerConfig& cfg,
                                            const QuadratureConfig& qcfg) {
  check_sampler_config(cfg);
  ElementarySampler sampler(component.c, alpha, p, component.b_scalar, cfg.truncation_tau, qcfg);
  std::vector<double> out(cfg.n_paths);
  for (int j = 0; j < cfg.n_paths; ++j) {
    SubstreamRng rng(cfg.seed, 0, static_cast<std::uint64_t>(j));
    out[j] = sampler.draw(rng);
  }
  return out;
}

Eigen::MatrixXd sample_ets(const EtsSpec& spec, const SamplerConfig& cfg,
                           const QuadratureConfig& qcfg) {
  check_sampler_config(cfg);
  const int d = spec.dimension();
  const double alpha = spec.alpha();
  const double p = spec.p();

  const auto nu_finite =
      discretize_extended_measure(spec.nu(), kSamplerDiscretizationLevel, alpha, p);
  const auto components = to_elementary_sum(nu_finite, alpha, p, spec.shift());
  const Eigen::VectorXd shift = elementary_sum_shift(components, alpha, p, spec.shift(), qcfg);

  std::vector<ElementarySampler> samplers;
  samplers.reserve(components.size());
  for (const auto& comp : components) {
    samplers.emplace_back(comp.c, alpha, p, 0.0, cfg.truncation_tau, qcfg);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spec.gaussian());
  const bool has_gauss = es.eigenvalues().maxCoeff() > 0.0;
  Eigen::MatrixXd gauss_factor;
  if (has_gauss) {
    gauss_factor = es.eigenvectors() *
                   es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  }

  Eigen::MatrixXd samples(cfg.n_paths, d);
  Eigen::VectorXd normals(d);
  for (int j = 0; j < cfg.n_paths; ++j) {
    Eigen::VectorXd x = shift;
    if (has_gauss) {
      SubstreamRng rng(cfg.seed, 0, static_cast<std::uint64_t>(j));
      for (int i = 0; i < d; ++i) normals[i] = rng.next_normal();
      x += gauss_factor * normals;
    }
    for (std::size_t k = 0; k < components.size(); ++k) {
      SubstreamRng rng(cfg.seed, k + 1, static_cast<std::uint64_t>(j));
      x += samplers[k].draw(rng) * components[k].x;
    }
    samples.row(j) = x.transpose();
  }
  return samples;
}

std::vector<std::complex<double>> empirical_cf(const Eigen::MatrixXd& samples,
                                               const CfGrid& grid) {
  if (samples.rows() < 1) throw std::invalid_argument("empirical_cf: no samples");
  grid.validate();
  if (grid.dimension() != samples.cols()) {
    throw DimensionMismatch("empirical_cf: grid dimension does not match samples");
  }
  std::vector<std::complex<double>> out;
  out.reserve(grid.points.size());
  const double inv_n = 1.0 / static_cast<double>(samples.rows());
  for (const auto& z : grid.points) {
    std::complex<double> acc = 0.0;
    for (Eigen::Index row = 0; row < samples.rows(); ++row) {
      const double phase = samples.row(row).dot(z);
      acc += std::complex<double>(std::cos(phase), std::sin(phase));
    }
    out.push_back(acc * inv_n);
  }
  return out;
}

}  // namespace etstab
