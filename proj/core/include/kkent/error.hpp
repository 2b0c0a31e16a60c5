#ifndef KKENT_ERROR_HPP
#define KKENT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kkent {

// Invalid arguments or parameters passed to a library routine.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested chain length or matrix dimension is beyond the configured cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// LAPACK failure or a decomposition that fails its post-conditions.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed run configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kkent

#endif  // KKENT_ERROR_HPP
