// error.hpp
// Error type shared by every module of the library.

#pragma once

#include <stdexcept>
#include <string>

namespace neur {

enum class ErrorKind {
  InvalidParameters,
  InvalidState,
  NegativeProbability,
  PathDisagreement,
  InvalidRate,
  ZeroProbabilityOutcome,
  InvalidConfig,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace neur
