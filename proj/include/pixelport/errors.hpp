#pragma once

#include <stdexcept>
#include <string>

namespace pixelport {

/// Array shapes or mode counts that do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pixel index outside the grid.
class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Parameter outside the domain where a formula is defined (e.g. theta_d >= pi/2).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Unreadable or malformed file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid run configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pixelport
