#pragma once

#include <stdexcept>

namespace readeval {

// Base class for everything the toolkit raises on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or missing input: manifests, lexicons, unresolved ids, bad scores.
struct DataError : Error {
  using Error::Error;
};

// A computation that is undefined or impossible for the given inputs.
struct ComputeError : Error {
  using Error::Error;
};

}  // namespace readeval
