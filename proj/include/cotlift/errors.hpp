#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cotlift {

/// Chart point outside the model's domain, or a non-positive conformal factor.
class ChartDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coefficient denominator vanishes (or changes sign) on the validated t range.
class DegenerateCoefficient : public std::runtime_error {
 public:
  DegenerateCoefficient(const std::string& what, double t)
      : std::runtime_error(what + " (at t = " + std::to_string(t) + ")"), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

/// Energy density of a point exceeds the structure's validated range.
class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on a structure that does not meet its precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ConfigIssue {
  std::string path;
  std::string message;
};

/// Every validation problem found in a run configuration, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  ConfigError(std::string path, std::string message)
      : ConfigError(std::vector<ConfigIssue>{{std::move(path), std::move(message)}}) {}
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

}  // namespace cotlift
