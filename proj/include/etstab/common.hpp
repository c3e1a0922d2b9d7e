#ifndef ETSTAB_COMMON_HPP
#define ETSTAB_COMMON_HPP

#include <limits>
#include <stdexcept>
#include <string>

namespace etstab {

// +infinity is a first-class value of the extended positive reals: it is a
// legal atom radius (the sphere at infinity) and a legal integration endpoint.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DivergentIntegral : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class StableExponentOutOfRange : public Error {
 public:
  using Error::Error;
};

class InfiniteRadiusAtom : public Error {
 public:
  using Error::Error;
};

class StablePartForbidden : public Error {
 public:
  using Error::Error;
};

class ParameterMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotPSD : public Error {
 public:
  using Error::Error;
};

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
};

inline void check_config(const QuadratureConfig& cfg) {
  if (!(cfg.abs_tol > 0) || !(cfg.rel_tol > 0) || cfg.max_subdivisions < 1) {
    throw std::invalid_argument(
        "QuadratureConfig requires abs_tol > 0, rel_tol > 0, max_subdivisions >= 1");
  }
}

}  // namespace etstab

#endif  // ETSTAB_COMMON_HPP
