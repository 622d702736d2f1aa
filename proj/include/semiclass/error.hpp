#pragma once

#include <stdexcept>
#include <string>

namespace semiclass {

enum class ErrorKind {
  InvalidArgument,
  Unsupported,
  Budget,
  SingularGeneratingFunction,
  NonQuantizable,
  QuantizationFailure,
  Dimension,
  InsufficientData,
  SizeCap,
  Overlap,
  Irreversible,
  EmptyTarget,
  Config,
  Pipeline,
  Inconsistency,
  Resolution,
  Io,
};

const char* to_string(ErrorKind kind);

/// Library-wide exception. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace semiclass
