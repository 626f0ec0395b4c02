#include "tedfem/error.hpp"

namespace tedfem {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidMesh: return "InvalidMesh";
    case ErrorCode::NonPositiveConductivity: return "NonPositiveConductivity";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularTangent: return "SingularTangent";
    case ErrorCode::SingularMass: return "SingularMass";
    case ErrorCode::NoConvergenceQR: return "NoConvergenceQR";
    case ErrorCode::NoMechanicalMode: return "NoMechanicalMode";
  }
  return "Unknown";
}

}  // namespace tedfem
