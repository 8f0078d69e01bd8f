#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace reechme {

// Invalid configuration value. field() names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A round plan or metric series broke one of the protocol invariants.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class OutOfFieldError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class AggregationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace reechme
