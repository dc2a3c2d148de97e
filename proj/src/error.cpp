#include "projkit/error.hpp"

namespace projkit {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateVector: return "DegenerateVector";
    case ErrorCode::DependentSpan: return "DependentSpan";
    case ErrorCode::NonIncidentFlag: return "NonIncidentFlag";
    case ErrorCode::NonGenericFlags: return "NonGenericFlags";
    case ErrorCode::NonPositiveRatio: return "NonPositiveRatio";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::WrongClass: return "WrongClass";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::RegionNotContained: return "RegionNotContained";
    case ErrorCode::ComplexEigenvalues: return "ComplexEigenvalues";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::InconsistentStratum: return "InconsistentStratum";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace projkit
