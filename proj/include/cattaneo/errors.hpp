#pragma once

#include <stdexcept>
#include <string>

namespace cattaneo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid parameters or arguments outside an operation's domain.
struct DomainError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct QuadratureError : Error {
    QuadratureError(const std::string& what, double achieved)
        : Error(what), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

struct DivergenceError : Error {
    DivergenceError(const std::string& what, double t) : Error(what), time(t) {}
    double time;
};

struct NonContractionError : Error {
    using Error::Error;
};

}  // namespace cattaneo
