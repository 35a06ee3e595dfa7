#pragma once

#include <stdexcept>
#include <string>

namespace deqt {

/// Invalid configuration values (bad dimensions, out-of-range parameters).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// An operation was called outside its contract (stepping a finished
/// episode, index out of range, empty input).
class UsageError : public std::logic_error {
 public:
  explicit UsageError(const std::string& what) : std::logic_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace deqt
