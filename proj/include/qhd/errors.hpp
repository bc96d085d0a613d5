#pragma once

#include <stdexcept>
#include <string>

namespace qhd {

// Invalid or inconsistent configuration (CLI exit code 2).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime failure of a solver or transform (CLI exit code 3).
struct solver_error : std::runtime_error {
    explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qhd
