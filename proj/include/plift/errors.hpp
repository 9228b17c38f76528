#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plift {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mixing values from different variable contexts.
struct ContextError : Error {
    using Error::Error;
};

// Unknown variable name, or an operation on a parameter that only
// coordinates support (e.g. differentiation).
struct VarError : Error {
    using Error::Error;
};

struct EvalError : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : Error(msg + " (offset " + std::to_string(off) + ")"), offset(off) {}
};

// Constructor preconditions of the lift builders.
struct NotPoissonError : Error {
    using Error::Error;
};
struct NotCompatibleError : Error {
    using Error::Error;
};
struct NotCasimirError : Error {
    using Error::Error;
};
struct DependsOnCoordError : Error {
    using Error::Error;
};
struct NotLinearError : Error {
    using Error::Error;
};
struct NotLinearTensorError : Error {
    using Error::Error;
};
struct NotHomogeneousError : Error {
    using Error::Error;
};
struct SideConditionError : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};

struct UnknownAlgebraError : Error {
    using Error::Error;
};

// Numeric paths.
struct InsufficientSamplesError : Error {
    using Error::Error;
};
struct DivergenceError : Error {
    std::size_t step;
    DivergenceError(const std::string& msg, std::size_t at)
        : Error(msg + " (step " + std::to_string(at) + ")"), step(at) {}
};

}  // namespace plift
