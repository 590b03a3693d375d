#pragma once

#include <stdexcept>
#include <string>

namespace gifode {

enum class ErrorCode {
  ZeroDenominator,
  JetCapExceeded,
  ParseError,
  NotRationalInY,
  PoleAtPoint,
  DividesByF,
  GuideGap,
  UnsupportedMode,
  Gaveup,
  NotFound,
  BadAnchor,
  AssemblyInconsistent,
  DomainError,
  PoleOnPath,
  DepthExceeded,
  NoValidSamples,
  PoleOnTrajectory,
  CorpusExhausted,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, long position = -1)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  // Byte offset into the parsed text for ParseError, -1 otherwise.
  long position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  long position_;
};

}  // namespace gifode
