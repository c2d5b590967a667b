#pragma once

#include <stdexcept>
#include <string>

namespace softhand {

// Error taxonomy mirrored by the CLI exit codes:
//   ValidationError -> 2, IoError -> 3, NumericalError -> 4.

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace softhand
