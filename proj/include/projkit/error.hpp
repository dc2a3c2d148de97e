#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace projkit {

// Every failure the library can raise. The CLI prints error_name() on stderr,
// so names are stable and unique.
enum class ErrorCode {
  DegenerateVector,
  DependentSpan,
  NonIncidentFlag,
  NonGenericFlags,
  NonPositiveRatio,
  NotUnimodular,
  WrongClass,
  InvalidDomain,
  PointOutsideDomain,
  CoincidentPoints,
  RegionNotContained,
  ComplexEigenvalues,
  NonPositiveParameter,
  InconsistentStratum,
  InvalidArgument,
};

[[nodiscard]] std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace projkit
