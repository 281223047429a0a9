#ifndef FERERO_TYPES_HPP_
#define FERERO_TYPES_HPP_

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ferero {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Incompatible vector/matrix dimensions.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

/// Multiplier-domain contract violated (A F(theta) must stay positive
/// for the adaptive domain).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// A constraint configuration the requested algorithm does not support
/// (e.g. inequality constraints in single-loop mode).
class UnsupportedConstraintError : public Error {
 public:
  explicit UnsupportedConstraintError(const std::string& what) : Error(what) {}
};

/// Degenerate cone input (rank deficient, not pointed, not full-dimensional).
class ConeError : public Error {
 public:
  explicit ConeError(const std::string& what) : Error(what) {}
};

/// NaN/inf encountered in iterates; signals a bad step size or an
/// ill-posed instance.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(what) {}
};

/// Invalid experiment configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw DimensionError(what);
}

}  // namespace detail

}  // namespace ferero

#endif  // FERERO_TYPES_HPP_
