#pragma once

#include <stdexcept>
#include <string>

namespace ianet {

// Invalid configuration or malformed input. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Failure while running an otherwise valid configuration (coincident nodes
// with rho0 = 0, rejection-sampling cap, ...). CLI maps this to exit code 3.
class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ianet
