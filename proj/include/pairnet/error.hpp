#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pairnet {

enum class ErrorKind {
  Dimension,
  DegenerateSample,
  Config,
  InsufficientData,
  NotTrainable,
  Wiring,
  Growth,
  Parse,
  Load,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure surfaced by the library carries a kind so the CLI can print
// a stable "error: <kind>: <message>" line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pairnet
