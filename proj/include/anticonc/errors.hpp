#pragma once

#include <stdexcept>
#include <string>

namespace anticonc {

// Argument outside the mathematical domain of an operation (e.g. alpha not in (0,1]).
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// A configured resource cap (support size, clique solver size, ...) was exceeded.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (dimension mismatch, bad JSON field, ...).
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The operation is not implemented for this norm or dimension.
struct unsupported_error : input_error {
  using input_error::input_error;
};

}  // namespace anticonc
