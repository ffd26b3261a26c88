// errors.hpp - exception hierarchy shared by all chirospec modules

#pragma once

#include <stdexcept>
#include <string>

namespace chirospec {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// model
class NonHermitianInput : public Error { using Error::Error; };
class DetuningTooSmall : public Error { using Error::Error; };

// biphoton / spectrum
class UnsupportedKind : public Error { using Error::Error; };
class WrongKind : public Error { using Error::Error; };
class GridTooCoarse : public Error { using Error::Error; };
class InvalidParameter : public Error { using Error::Error; };

// Raised whenever a quadrature or spectrum value comes out NaN/inf.
class NonFiniteResult : public Error { using Error::Error; };

// analysis
class CurveTooShort : public Error { using Error::Error; };
class GridMismatch : public Error { using Error::Error; };

// cli
class ConfigError : public Error { using Error::Error; };

class ParseError : public ConfigError {
public:
    ParseError(const std::string& what, int line)
        : ConfigError(line >= 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class ValidationError : public ConfigError { using ConfigError::ConfigError; };

class IoError : public Error { using Error::Error; };

}  // namespace chirospec
