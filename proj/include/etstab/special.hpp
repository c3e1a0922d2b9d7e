#ifndef ETSTAB_SPECIAL_HPP
#define ETSTAB_SPECIAL_HPP

#include <complex>

#include "etstab/common.hpp"

namespace etstab {

// Integral of t^{k-1-alpha} e^{-t^p} over [lo, hi]. hi may be +inf. For lo = 0
// the integrand is integrable iff k - alpha > 0; otherwise DivergentIntegral.
// For lo = 0, hi = inf the value is Gamma((k-alpha)/p)/p.
double tempered_power_integral(double alpha, double p, double lo, double hi, int k,
                               const QuadratureConfig& cfg = {});

// g0(a) = integral of t^{1-alpha} e^{-t^p} over [0, a]; the scalar kernel of the
// truncated-Gaussian-component matrices. Monotone nondecreasing in a.
double truncated_gauss_kernel(double alpha, double p, double a,
                              const QuadratureConfig& cfg = {});

// psi(s) = integral over (0, inf) of (e^{ist} - 1 - ist/(1+t^2)) t^{-1-alpha} e^{-(t/rho)^p} dt,
// with e^{-(t/inf)^p} == 1 (pure power-law atom; requires alpha in (0,2)).
// Satisfies psi(0) = 0, psi(-s) = conj(psi(s)), Re psi <= 0.
std::complex<double> levy_oscillatory_integral(double s, double alpha, double p, double rho,
                                               const QuadratureConfig& cfg = {});

struct CosineBound {
  double lhs;  // integral of (cos(ts)-1) t^{-1-alpha} e^{-t^p} dt
  double rhs;  // -(11/24) s^2 g0(1)
};

// Both sides of the cosine inequality; callers assert lhs <= rhs for |s| <= 1.
CosineBound cosine_bound_check(double s, double alpha, double p,
                               const QuadratureConfig& cfg = {});

// kappa(rho) = integral of t^{-alpha} e^{-t^p} [1/(1+t^2) - 1/(1+rho^2 t^2)] dt.
// The gap between the radial centering of a scalar elementary variable and the
// vector-level centering of an atom at radius rho; folded into shifts when an
// atomic measure is decomposed into elementary components.
double centering_shift_integral(double alpha, double p, double rho,
                                const QuadratureConfig& cfg = {});

namespace detail {
// Incomplete-gamma-type building block: integral of u^{s-1} e^{-u} over [a, b],
// 0 <= a < b <= inf, computed by series + adaptive quadrature (no recurrences).
// a = 0 requires s > 0.
double gamma_integral(double s, double a, double b, const QuadratureConfig& cfg);
}  // namespace detail

}  // namespace etstab

#endif  // ETSTAB_SPECIAL_HPP
