#include "bprt/error.hpp"

namespace bprt {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotOrthonormal: return "NotOrthonormal";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::BadLevel: return "BadLevel";
    case ErrorKind::SingularOperator: return "SingularOperator";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace bprt
