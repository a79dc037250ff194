#pragma once

#include <stdexcept>
#include <string>

namespace unifact {

/// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
  invalid_input,
  not_a_group,
  non_associative,
  cap_exceeded,
  budget_exceeded,
  precondition,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace unifact
