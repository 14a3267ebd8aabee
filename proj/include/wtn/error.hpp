#pragma once

#include <stdexcept>
#include <string>

namespace wtn {

// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input files (registries, trade records, config).
class ParseError : public Error {
public:
    using Error::Error;
};

// A required input file is missing or unreadable.
class FileError : public Error {
public:
    FileError(const std::string& path, const std::string& what)
        : Error(what + ": " + path), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// Invalid parameters (alpha outside (0,1), k too large, unknown codes, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Structurally invalid data, e.g. a tensor with no trade at all.
class DataError : public Error {
public:
    using Error::Error;
};

// Power iteration did not reach the requested tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual, int iterations)
        : Error(what), residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

// Linear solve failure inside the reduced-matrix computation.
class SolverError : public Error {
public:
    using Error::Error;
};

}  // namespace wtn
