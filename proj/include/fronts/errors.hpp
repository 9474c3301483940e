#pragma once

#include <stdexcept>
#include <string>

namespace fronts {

// Base class for all library failures.
struct FrontsError : std::runtime_error {
  explicit FrontsError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid input (bad reaction spec, inadmissible trial, bad bracket, ...).
struct InvalidArgument : FrontsError {
  explicit InvalidArgument(const std::string& msg) : FrontsError(msg) {}
};

// A numerical procedure failed to converge or lost validity.
struct NumericalFailure : FrontsError {
  explicit NumericalFailure(const std::string& msg) : FrontsError(msg) {}
};

}  // namespace fronts
