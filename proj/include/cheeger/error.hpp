#pragma once

#include <stdexcept>
#include <string>

namespace cheeger {

enum class ErrorCode {
  Config,
  SizeLimitExceeded,
  WrongManifold,
  EigenNotConverged,
  ResolutionTooCoarse,
  UnsupportedDimension,
  DegenerateFunction,
  DegenerateSubset,
  BandwidthTooSmall,
  InfeasibleMass,
  InsufficientData,
  MissingColumns,
  Io,
};

const char* to_string(ErrorCode code);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cheeger
