#include "etstab/special.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "etstab/quadrature.hpp"

namespace etstab {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};

// Series for int_0^x u^{s-1} e^{-u} du, stable for 0 <= x <= 1.5, s > 0:
// sum_j (-1)^j x^{s+j} / (j! (s+j)).
double gamma_head_series(double s, double x) {
  if (x == 0.0) return 0.0;
  double pow_over_fact = std::pow(x, s);  // x^{s+j} / j!
  double sum = 0.0;
  for (int j = 0; j < 500; ++j) {
    const double term = pow_over_fact / (s + j);
    sum += (j % 2 == 0) ? term : -term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-320) return sum;
    pow_over_fact *= x / (j + 1);
  }
  throw QuadratureFailure("gamma_head_series did not converge");
}

// Bound on int_u^inf v^{s-1} e^{-v} dv, valid once u >= max(1, 2(s-1)).
double gamma_tail_bound(double s, double u) {
  if (u < 1.0 || (s > 1.0 && u < 2.0 * (s - 1.0))) return kInf;
  const double v = std::exp((s - 1.0) * std::log(u) - u);
  return (s > 1.0) ? 2.0 * v : v;
}

double gamma_integrand(double s, double u) {
  return std::exp((s - 1.0) * std::log(u) - u);
}

// e^x - 1 - x - x^2/2, cancellation-safe near zero.
complex<double> expm1_minus_quadratic(complex<double> x) {
  if (std::abs(x) < 0.7) {
    complex<double> term = x * x * x / 6.0;  // x^j / j! from j = 3
    complex<double> sum = term;
    for (int j = 4; j < 40; ++j) {
      term *= x / static_cast<double>(j);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-320) break;
    }
    return sum;
  }
  return std::exp(x) - 1.0 - x - 0.5 * x * x;
}

// int_0^1 t^{1-alpha} e^{-(t/rho)^p} dt
double kernel_moment2_head(double alpha, double p, double rho, const QuadratureConfig& cfg) {
  if (std::isinf(rho)) return 1.0 / (2.0 - alpha);
  const double s = (2.0 - alpha) / p;
  return std::pow(rho, 2.0 - alpha) * detail::gamma_integral(s, 0.0, std::pow(1.0 / rho, p), cfg) / p;
}

// int_1^inf t^{-1-alpha} e^{-(t/rho)^p} dt
double kernel_tail_order0(double alpha, double p, double rho, const QuadratureConfig& cfg) {
  if (std::isinf(rho)) return 1.0 / alpha;
  const double s = -alpha / p;
  return std::pow(rho, -alpha) * detail::gamma_integral(s, std::pow(1.0 / rho, p), kInf, cfg) / p;
}

// int_1^inf t^{-alpha} e^{-(t/rho)^p} / (1+t^2) dt
double centering_tail(double alpha, double p, double rho, const QuadratureConfig& cfg) {
  const bool stable = std::isinf(rho);
  auto f = [=](double t) {
    const double taper = stable ? 1.0 : std::exp(-std::pow(t / rho, p));
    return std::pow(t, -alpha) / (1.0 + t * t) * taper;
  };
  auto bound = [=](double upper) {
    // integrand <= t^{-alpha-2} e^{-(t/rho)^p} for t >= 1
    double b = kInf;
    if (alpha > -1.0) b = std::pow(upper, -1.0 - alpha) / (1.0 + alpha);
    if (!stable) {
      const double s = (-alpha - 1.0) / p;
      const double via_gamma =
          std::pow(rho, -alpha - 1.0) * gamma_tail_bound(s, std::pow(upper / rho, p)) / p;
      b = std::min(b, via_gamma);
    }
    return b;
  };
  return detail::integrate_doubling<double>(f, 1.0, cfg, bound, "centering tail");
}

// int_1^inf e^{ist} t^{-1-alpha} e^{-(t/rho)^p} dt for s > 0, evaluated on the
// ray t = 1 + r e^{i theta}; the rotated integrand decays at rate s sin(theta)
// and the taper keeps Re (t/rho)^p positive since theta < pi/(2p).
complex<double> rotated_oscillatory_tail(double s, double alpha, double p, double rho,
                                         const QuadratureConfig& cfg) {
  const bool stable = std::isinf(rho);
  const double theta = stable ? std::numbers::pi / 4.0
                              : std::min(std::numbers::pi / 4.0, std::numbers::pi / (4.0 * p));
  const complex<double> dir = std::polar(1.0, theta);
  const double sin_theta = std::sin(theta);
  auto f = [=](double r) -> complex<double> {
    const complex<double> t = 1.0 + r * dir;
    complex<double> val = std::exp(kI * s * t - (1.0 + alpha) * std::log(t));
    if (!stable) val *= std::exp(-std::exp(p * std::log(t / rho)));
    return val * dir;
  };
  auto bound = [=](double upper) {
    if (alpha < -1.0) return kInf;  // rely on the taper via the chunk streak
    const double alg = std::pow(std::max(1.0, upper * sin_theta), -(1.0 + alpha));
    return std::exp(-s * sin_theta * upper) / (s * sin_theta) * alg;
  };
  return detail::integrate_doubling<complex<double>>(f, 0.0, cfg, bound, "oscillatory tail");
}

}  // namespace

namespace detail {

double gamma_integral(double s, double a, double b, const QuadratureConfig& cfg) {
  if (!(a >= 0.0) || !(b > a)) throw std::invalid_argument("gamma_integral: need 0 <= a < b");
  if (a == 0.0) {
    if (s <= 0.0) {
      throw DivergentIntegral("gamma_integral: non-integrable singularity at 0 (s <= 0)");
    }
    const double d = std::min(1.0, b);
    double head = gamma_head_series(s, d);
    if (b > d) head += gamma_integral(s, d, b, cfg);
    return head;
  }
  auto f = [s](double u) { return gamma_integrand(s, u); };
  if (std::isinf(b)) {
    auto bound = [s](double upper) { return gamma_tail_bound(s, upper); };
    return integrate_doubling<double>(f, a, cfg, bound, "gamma tail");
  }
  // Skip the region where the integrand has decayed below double precision.
  const double sm = std::max(0.0, s - 1.0);
  const double dead = 745.0 + 3.0 * sm * std::log(2.0 + sm) + 10.0;
  const double hi = std::min(b, std::max(a + 1.0, dead));
  return integrate_adaptive<double>(f, a, hi, cfg, "gamma integral");
}

}  // namespace detail

double tempered_power_integral(double alpha, double p, double lo, double hi, int k,
                               const QuadratureConfig& cfg) {
  check_config(cfg);
  if (!(alpha < 2.0)) throw std::invalid_argument("tempered_power_integral: alpha must be < 2");
  if (!(p > 0.0)) throw std::invalid_argument("tempered_power_integral: p must be > 0");
  if (!(lo >= 0.0) || !(hi > lo)) throw std::invalid_argument("tempered_power_integral: need 0 <= lo < hi");
  if (k < 0) throw std::invalid_argument("tempered_power_integral: k must be >= 0");
  const double s = (k - alpha) / p;
  if (lo == 0.0 && s <= 0.0) {
    throw DivergentIntegral("tempered_power_integral: k - alpha <= 0 with lo = 0");
  }
  const double a = (lo == 0.0) ? 0.0 : std::pow(lo, p);
  const double b = std::isinf(hi) ? kInf : std::pow(hi, p);
  return detail::gamma_integral(s, a, b, cfg) / p;
}

double truncated_gauss_kernel(double alpha, double p, double a, const QuadratureConfig& cfg) {
  if (!(a >= 0.0)) throw std::invalid_argument("truncated_gauss_kernel: a must be >= 0");
  if (a == 0.0) return 0.0;
  return tempered_power_integral(alpha, p, 0.0, a, 2, cfg);
}

std::complex<double> levy_oscillatory_integral(double s, double alpha, double p, double rho,
                                               const QuadratureConfig& cfg) {
  check_config(cfg);
  if (!(alpha < 2.0)) throw std::invalid_argument("levy_oscillatory_integral: alpha must be < 2");
  if (!(p > 0.0)) throw std::invalid_argument("levy_oscillatory_integral: p must be > 0");
  if (!(rho > 0.0)) throw std::invalid_argument("levy_oscillatory_integral: rho must be > 0");
  const bool stable = std::isinf(rho);
  if (stable && !(alpha > 0.0 && alpha < 2.0)) {
    throw StableExponentOutOfRange(
        "levy_oscillatory_integral: rho = inf requires alpha in (0,2)");
  }
  if (s == 0.0) return {0.0, 0.0};
  if (s < 0.0) return std::conj(levy_oscillatory_integral(-s, alpha, p, rho, cfg));

  // [0,1]: subtract the quadratic Taylor core analytically; the remainder is
  // O(t^{2-alpha}) at the origin.
  const double head_quad = kernel_moment2_head(alpha, p, rho, cfg);
  auto remainder = [=](double t) -> complex<double> {
    if (t <= 0.0) return {0.0, 0.0};
    const complex<double> e3 = expm1_minus_quadratic(kI * s * t);
    const complex<double> bracket = e3 + kI * s * t * t * t / (1.0 + t * t);
    const double taper = stable ? 1.0 : std::exp(-std::pow(t / rho, p));
    return bracket * std::pow(t, -1.0 - alpha) * taper;
  };
  const complex<double> head =
      -(s * s / 2.0) * head_quad +
      detail::integrate_adaptive<complex<double>>(remainder, 0.0, 1.0, cfg, "oscillatory head");

  // [1,inf): e^{ist} piece on a rotated ray; the constant and centering pieces
  // are non-oscillatory.
  const complex<double> osc = rotated_oscillatory_tail(s, alpha, p, rho, cfg);
  const double flat = kernel_tail_order0(alpha, p, rho, cfg);
  const double cent = centering_tail(alpha, p, rho, cfg);

  return head + osc - flat - kI * s * cent;
}

CosineBound cosine_bound_check(double s, double alpha, double p, const QuadratureConfig& cfg) {
  if (!(std::abs(s) <= 1.0)) throw std::invalid_argument("cosine_bound_check: |s| must be <= 1");
  const double g01 = truncated_gauss_kernel(alpha, p, 1.0, cfg);
  const double rhs = -(11.0 / 24.0) * s * s * g01;
  const double lhs =
      (s == 0.0) ? 0.0 : levy_oscillatory_integral(std::abs(s), alpha, p, 1.0, cfg).real();
  return {lhs, rhs};
}

double centering_shift_integral(double alpha, double p, double rho, const QuadratureConfig& cfg) {
  check_config(cfg);
  if (!(alpha < 2.0)) throw std::invalid_argument("centering_shift_integral: alpha must be < 2");
  if (!(p > 0.0)) throw std::invalid_argument("centering_shift_integral: p must be > 0");
  if (!(rho > 0.0) || std::isinf(rho)) {
    throw std::invalid_argument("centering_shift_integral: rho must be finite and > 0");
  }
  if (rho == 1.0) return 0.0;
  const double rho2m1 = rho * rho - 1.0;
  auto f = [=](double t) {
    if (t <= 0.0) return 0.0;
    const double t2 = t * t;
    const double frac = t2 * rho2m1 / ((1.0 + t2) * (1.0 + rho * rho * t2));
    return std::pow(t, -alpha) * std::exp(-std::pow(t, p)) * frac;
  };
  const double head = detail::integrate_adaptive<double>(f, 0.0, 1.0, cfg, "centering head");
  auto bound = [=](double upper) {
    // |fraction| <= 1, so the integrand is dominated by t^{-alpha} e^{-t^p}.
    const double s = (1.0 - alpha) / p;
    return gamma_tail_bound(s, std::pow(upper, p)) / p;
  };
  const double tail = detail::integrate_doubling<double>(f, 1.0, cfg, bound, "centering shift tail");
  return head + tail;
}

}  // namespace etstab
