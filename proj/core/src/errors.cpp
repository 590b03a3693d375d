#include "gifode/errors.hpp"

namespace gifode {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::JetCapExceeded: return "JetCapExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotRationalInY: return "NotRationalInY";
    case ErrorCode::PoleAtPoint: return "PoleAtPoint";
    case ErrorCode::DividesByF: return "DividesByF";
    case ErrorCode::GuideGap: return "GuideGap";
    case ErrorCode::UnsupportedMode: return "UnsupportedMode";
    case ErrorCode::Gaveup: return "Gaveup";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::BadAnchor: return "BadAnchor";
    case ErrorCode::AssemblyInconsistent: return "AssemblyInconsistent";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::PoleOnPath: return "PoleOnPath";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::NoValidSamples: return "NoValidSamples";
    case ErrorCode::PoleOnTrajectory: return "PoleOnTrajectory";
    case ErrorCode::CorpusExhausted: return "CorpusExhausted";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace gifode
