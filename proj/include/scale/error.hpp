#pragma once

#include <stdexcept>
#include <string>

namespace scale {

enum class ErrorKind {
    parameter,  // bad argument to a library call
    config,     // unresolvable experiment configuration
    data,       // malformed or degenerate input data
    numeric     // overflow / non-finite intermediate
};

/// Base of every exception thrown by the library. Carries the module that
/// raised it so the CLI can report where a run failed.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& what)
        : std::runtime_error(module + ": " + what), kind_(kind), module_(std::move(module)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

    /// Process exit code used by the CLI: 2 config/parameter, 3 data, 4 numeric.
    int exit_code() const noexcept {
        switch (kind_) {
        case ErrorKind::parameter:
        case ErrorKind::config: return 2;
        case ErrorKind::data: return 3;
        case ErrorKind::numeric: return 4;
        }
        return 1;
    }

private:
    ErrorKind kind_;
    std::string module_;
};

struct ParameterError : Error {
    ParameterError(std::string module, const std::string& what)
        : Error(ErrorKind::parameter, std::move(module), what) {}
};

struct ConfigError : Error {
    ConfigError(std::string module, const std::string& what)
        : Error(ErrorKind::config, std::move(module), what) {}
};

struct DataError : Error {
    DataError(std::string module, const std::string& what)
        : Error(ErrorKind::data, std::move(module), what) {}
};

struct NumericError : Error {
    NumericError(std::string module, const std::string& what)
        : Error(ErrorKind::numeric, std::move(module), what) {}
};

}  // namespace scale
