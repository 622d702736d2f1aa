#include "semiclass/error.hpp"

namespace semiclass {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Unsupported: return "unsupported operation";
    case ErrorKind::Budget: return "budget exceeded";
    case ErrorKind::SingularGeneratingFunction: return "singular generating function";
    case ErrorKind::NonQuantizable: return "non-quantizable matrix";
    case ErrorKind::QuantizationFailure: return "quantization failure";
    case ErrorKind::Dimension: return "dimension error";
    case ErrorKind::InsufficientData: return "insufficient data";
    case ErrorKind::SizeCap: return "size cap exceeded";
    case ErrorKind::Overlap: return "register overlap";
    case ErrorKind::Irreversible: return "irreversible basis function";
    case ErrorKind::EmptyTarget: return "empty target";
    case ErrorKind::Config: return "config error";
    case ErrorKind::Pipeline: return "pipeline checkpoint failed";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::Resolution: return "resolution error";
    case ErrorKind::Io: return "io error";
  }
  return "error";
}

}  // namespace semiclass
