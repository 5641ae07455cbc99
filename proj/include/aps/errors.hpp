#pragma once

#include <stdexcept>
#include <string>

namespace aps {

// Input errors (CLI exit code 2).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};
struct MalformedMap : std::runtime_error {
    explicit MalformedMap(const std::string& msg) : std::runtime_error(msg) {}
};

// Move application errors.
struct PatternMismatch : std::runtime_error {
    explicit PatternMismatch(const std::string& msg) : std::runtime_error(msg) {}
};
struct PunctureObstruction : std::runtime_error {
    explicit PunctureObstruction(const std::string& msg) : std::runtime_error(msg) {}
};
struct BadPermutation : std::runtime_error {
    explicit BadPermutation(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal invariant breaches (CLI exit code 3).  These indicate a bug,
// never a property of valid input.
struct UnrealizableCase : std::logic_error {
    explicit UnrealizableCase(const std::string& msg) : std::logic_error(msg) {}
};
struct InconsistentComplex : std::logic_error {
    explicit InconsistentComplex(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace aps
