#pragma once

#include <stdexcept>
#include <string>

namespace voskit {

// File or stream level failure: missing path, short read, OS error.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Input bytes violate the expected container format (PNG, JPEG, MSLG, npy).
class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// A configuration document fails schema or semantic validation.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace voskit
