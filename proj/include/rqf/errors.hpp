#pragma once

#include <stdexcept>
#include <string>

namespace rqf {

// Domain failures surfaced to callers. The CLI maps these to exit code 2.
enum class ErrorKind {
  NotSquarefree,
  MTooSmall,
  FieldMismatch,
  Ramified,
  NotSplit,
  NotCoprime,
  DiscriminantTooLarge,
  CannotFactor,
  PrecisionExhausted,
  GeneratorSearchFailed,
  NotSaturated,
  NonCyclicPPart,
  EmptyPool,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rqf
