#pragma once

#include <stdexcept>
#include <string>

namespace slpinn {

/// Invalid configuration or arguments (CLI exit code 2).
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Training failed irrecoverably, e.g. non-finite loss (CLI exit code 3).
struct TrainAbort : std::runtime_error {
    explicit TrainAbort(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure (CLI exit code 4).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace slpinn
