#pragma once

#include <stdexcept>
#include <string>

namespace mcnn {

enum class ErrorKind {
    Config,
    BoundaryParameter,
    DegenerateTemplate,
    EmptyShift,
    EmptyComposition,
    NotIrreducible,
    SupportMismatch,
    IncompatibleLabels,
    OracleLimit,
    NoConvergence,
    DepthLimit,
};

const char* kind_name(ErrorKind k);

// 2 usage/config, 3 degenerate input, 4 internal limit
int exit_code(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind), message_(what) {}
    ErrorKind kind() const noexcept { return kind_; }
    const std::string& message() const noexcept { return message_; }

private:
    ErrorKind kind_;
    std::string message_;
};

}  // namespace mcnn
