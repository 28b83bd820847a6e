#pragma once

#include <stdexcept>
#include <string>

namespace sphan {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or contract-violating input: unknown pair ids, schema
// violations, incompatible grids, out-of-range parameters.
class InputError : public Error {
public:
    using Error::Error;
};

// A check could not be carried out at the requested resolution or
// settings; the outcome is inconclusive rather than pass/fail.
class ResolutionError : public Error {
public:
    using Error::Error;
};

// Internal numerical failure (e.g. a node solver that did not converge).
class InternalError : public Error {
public:
    using Error::Error;
};

// Command-line misuse: unknown names, malformed flags, invalid settings.
class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace sphan
