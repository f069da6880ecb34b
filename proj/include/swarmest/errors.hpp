#pragma once

#include <stdexcept>
#include <string>

namespace swarmest {

// Input outside an operation's mathematical domain (non-finite position,
// empty estimate list, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid or inconsistent configuration. `field()` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// The requested field kind has no closed-form position-to-value mapping.
class UnsupportedMapping : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace swarmest
