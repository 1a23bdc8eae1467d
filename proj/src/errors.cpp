#include "cotlift/errors.hpp"

namespace cotlift {

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& i : issues) msg += "\n  " + i.path + ": " + i.message;
        return msg;
      }()),
      issues_(std::move(issues)) {}

}  // namespace cotlift
