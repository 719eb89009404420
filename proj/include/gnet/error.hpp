#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gnet {

enum class Errc {
  SyntaxError,
  UnboundVariable,
  TypeMismatch,
  UnknownService,
  DuplicateService,
  UnknownBlock,
  DuplicateBlock,
  EmptyBranchSet,
  MissingReqMethod,
  MalformedBlock,
  EmptyReplacement,
  UnknownMethod,
  ArityMismatch,
  UnboundFreeVariable,
  NotEnabled,
  DepthLimitExceeded,
  SubnetDeadlock,
  StepLimit,
  UnflattenableIsp,
  UndeclaredPlaceReference,
  InvalidModel,
  Io,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can map it to an outcome without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(Errc::SyntaxError,
              "at " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace gnet
