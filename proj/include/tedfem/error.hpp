#pragma once

#include <stdexcept>
#include <string>

namespace tedfem {

enum class ErrorCode {
  InvalidArgument,
  InvalidMesh,
  NonPositiveConductivity,
  SingularSystem,
  NoConvergence,
  SingularTangent,
  SingularMass,
  NoConvergenceQR,
  NoMechanicalMode,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the solver core carries one of the codes above so
/// the C layer can translate it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tedfem
