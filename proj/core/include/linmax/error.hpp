#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace linmax {

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A step function required to be nondecreasing has a downward jump.
class MonotonicityError : public std::invalid_argument {
 public:
  MonotonicityError(std::size_t jump_index, double time, double before,
                    double after);

  std::size_t jump_index() const noexcept { return jump_index_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t jump_index_;
  double time_;
};

/// A coefficient model family the requested operation has no closed form for.
class UnsupportedFamilyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A coefficient model fails a summability condition required by the
/// requested computation. `condition()` carries the condition name.
class ConditionError : public std::runtime_error {
 public:
  ConditionError(std::string condition, const std::string& message)
      : std::runtime_error(message), condition_(std::move(condition)) {}

  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// Malformed or missing configuration; `key()` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message),
        key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace linmax
