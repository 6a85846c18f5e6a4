#pragma once

#include <stdexcept>
#include <string>

namespace hybridvec {

// Bad or unusable input: unreadable files, malformed lines, preconditions
// on user-supplied data. Maps to exit code 2 in the CLI.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Numeric failure: non-finite parameters, undefined statistics.
// Maps to exit code 3 in the CLI.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace hybridvec
