#pragma once

#include <stdexcept>
#include <string>

namespace hallmild {

// Base error for everything raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Configuration file / option validation failures (CLI exit 64).
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// File format / read / write failures (CLI exit 74).
struct IoError : Error {
    explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace hallmild
