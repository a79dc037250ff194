#include "unifact/error.hpp"

namespace unifact {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::not_a_group: return "not_a_group";
    case ErrorKind::non_associative: return "non_associative";
    case ErrorKind::cap_exceeded: return "cap_exceeded";
    case ErrorKind::budget_exceeded: return "budget_exceeded";
    case ErrorKind::precondition: return "precondition";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

}  // namespace unifact
