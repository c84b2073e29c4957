#pragma once

#include <stdexcept>
#include <string>

namespace semcom {

// Invalid configuration or profile content. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem / stream failures, always carrying the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace semcom
