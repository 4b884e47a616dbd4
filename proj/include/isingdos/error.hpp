#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isingdos {

enum class ErrorCode {
  InvalidArgs,
  CapExceeded,
  EigensolverFailure,
  OddN,
  OutOfSupport,
  NoConvergence,
  AtOrBelowGroundState,
  AlphaSingular,
  UnknownClass,
  InvalidRegime,
  EmptySpectrum,
  DisjointSupports,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. The code is stable and machine readable; the
/// message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace isingdos
