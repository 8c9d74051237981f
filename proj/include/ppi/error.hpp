#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppi {

enum class ErrorKind {
  NonFinite,
  DimMismatch,
  NotSquare,
  NotPPI,
  ResidualExceeded,
  ShapeMismatch,
  NotInner,
  BadDegree,
  NotContraction,
  NotReducing,
  NotProductForm,
  NotInvariant,
  RankDeficient,
  NotIsometricSymbol,
  NotAnalytic,
  MarginExceeded,
  ChainInadmissible,
  ParseError,
  BadSpec,
  BadTolerance,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure in the library is reported as an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the inner-function tests; carries the first lag whose
/// convolution identity fails and the size of the failure.
class NotInnerError : public Error {
 public:
  NotInnerError(int lag, double residual)
      : Error(ErrorKind::NotInner,
              "coefficient identity fails at lag " + std::to_string(lag) +
                  " (residual " + std::to_string(residual) + ")"),
        lag_(lag),
        residual_(residual) {}

  int lag() const noexcept { return lag_; }
  double residual() const noexcept { return residual_; }

 private:
  int lag_;
  double residual_;
};

}  // namespace ppi
