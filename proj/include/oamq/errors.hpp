#pragma once

#include <stdexcept>
#include <string>

namespace oamq {

// Bad arguments or configuration. Maps to CLI exit code 1.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Sampling too coarse for the requested propagation distance.
class AliasingError : public InputError {
 public:
  explicit AliasingError(const std::string& what) : InputError(what) {}
};

// A numerical procedure failed to reach its tolerance. Maps to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oamq
