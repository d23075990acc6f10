#pragma once

#include <stdexcept>
#include <string>

namespace magnobattery {

// Bad arguments: non-finite entries, negative times, malformed grids or sweep specs.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// An amplitude state whose norm exceeds one beyond solver tolerance.
class InconsistentState : public std::domain_error {
public:
    explicit InconsistentState(const std::string& what) : std::domain_error(what) {}
};

}  // namespace magnobattery
