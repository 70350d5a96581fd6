#pragma once

#include <stdexcept>
#include <string>

namespace gcode {

// Error categories map 1:1 onto the CLI exit codes; see tools/.
// Messages start with a short kind tag ("BadHeader: ..."), followed by
// source/line information where available.

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace gcode
