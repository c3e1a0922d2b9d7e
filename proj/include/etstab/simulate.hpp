#ifndef ETSTAB_SIMULATE_HPP
#define ETSTAB_SIMULATE_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "etstab/approx.hpp"
#include "etstab/charfn.hpp"
#include "etstab/measures.hpp"

namespace etstab {

struct SamplerConfig {
  std::uint64_t seed = 0;
  double truncation_tau = 1e-3;  // small-jump cutoff, used when alpha >= 0
  int n_paths = 1;
};

void check_sampler_config(const SamplerConfig& cfg);

// Counter-based substream generator: every (seed, component, path) triple
// yields an independent deterministic stream, so sampled matrices do not
// depend on evaluation order.
class SubstreamRng {
 public:
  SubstreamRng(std::uint64_t seed, std::uint64_t component, std::uint64_t path);

  std::uint64_t next_u64();
  double next_unit();           // uniform on (0,1)
  double next_normal();         // standard normal (polar-free, two uniforms)
  double next_gamma(double shape);
  long next_poisson(double mean);

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// Sampler for the scalar elementary variable with Levy density
// c 1_{t>0} t^{-1-alpha} e^{-t^p} and shift b_scalar. Exact compound Poisson
// for alpha < 0; for alpha in [0,2) jumps above tau are drawn by inverting the
// tabulated tail and the small jumps are replaced by their compensating drift
// plus a matched normal.
class ElementarySampler {
 public:
  ElementarySampler(double c, double alpha, double p, double b_scalar, double tau,
                    const QuadratureConfig& cfg = {});

  double draw(SubstreamRng& rng) const;

  bool exact() const { return exact_; }
  double poisson_rate() const { return lambda_; }
  double drift() const { return drift_; }
  double small_jump_sigma() const { return sigma_small_; }

 private:
  double invert_jump(double unit) const;

  double alpha_ = 0.0;
  double p_ = 1.0;
  bool exact_ = false;
  double lambda_ = 0.0;
  double drift_ = 0.0;
  double sigma_small_ = 0.0;
  double gamma_shape_ = 0.0;  // exact path: jump = Gamma(shape)^{1/p}
  std::vector<double> node_t_;
  std::vector<double> node_cdf_;
  std::vector<double> node_pdf_;
};

// One scalar draw of an elementary component (stream (seed, 0, 0)).
double sample_elementary(const ElementaryComponent& component, double alpha, double p,
                         const SamplerConfig& cfg, const QuadratureConfig& qcfg = {});

// n_paths scalar draws, path j on stream (seed, 0, j).
std::vector<double> sample_elementary_paths(const ElementaryComponent& component, double alpha,
                                            double p, const SamplerConfig& cfg,
                                            const QuadratureConfig& qcfg = {});

// n_paths x d sample matrix of the full spec: Gaussian part by an
// eigendecomposition factor, the measure part as a sum of elementary draws,
// centering gaps folded into the shift so the empirical CF targets
// exp(char_exponent).
Eigen::MatrixXd sample_ets(const EtsSpec& spec, const SamplerConfig& cfg,
                           const QuadratureConfig& qcfg = {});

// Mean of e^{i<z,x>} over sample rows, one value per grid point.
std::vector<std::complex<double>> empirical_cf(const Eigen::MatrixXd& samples,
                                               const CfGrid& grid);

// Level used to push infinite atoms out before sampling.
inline constexpr int kSamplerDiscretizationLevel = 16;

}  // namespace etstab

#endif  // ETSTAB_SIMULATE_HPP
