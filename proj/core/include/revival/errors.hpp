#pragma once

#include <stdexcept>
#include <string>

namespace revival {

// Error categories map 1:1 onto CLI exit codes: config -> 2, numeric -> 3, io -> 4.

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed measurement inputs (missing settings, zero counts, bad counts file).
struct ProtocolError : ConfigError {
  explicit ProtocolError(const std::string& what) : ConfigError(what) {}
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace revival
