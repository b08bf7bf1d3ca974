#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace aspectminer {

enum class Errc {
  MalformedRecord,
  DanglingReference,
  DuplicateId,
  CyclicInheritance,
  UnknownType,
  UnknownConcept,
  EmptyTraceSet,
  UnknownMethod,
  EmptySeed,
  UnknownMember,
  InfeasibleSpec,
  InvalidArgument,
};

const char* to_string(Errc code);

/// Input-level failure. Carries the offending record line when one exists.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string detail, std::optional<std::size_t> line = std::nullopt);

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  Errc code_;
  std::string detail_;
  std::optional<std::size_t> line_;
};

/// Raised when an internal invariant does not hold. The CLI maps it to exit 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Process exit status for an exception escaping a command: 1 for input
/// errors, 2 for invariant violations and other logic errors.
int exit_status(const std::exception& e) noexcept;

}  // namespace aspectminer
