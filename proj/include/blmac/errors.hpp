#pragma once

#include <stdexcept>
#include <string>

namespace blmac {

// Value outside the domain an operation accepts (recoding range, sample width, ...).
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Ill-formed filter specification or degenerate input.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Accumulator left its declared register width.
class OverflowError : public std::overflow_error {
public:
    OverflowError(const std::string& what, int layer)
        : std::overflow_error(what), layer_(layer) {}

    int layer() const noexcept { return layer_; }

private:
    int layer_;
};

// Run-length stream cannot be produced, parsed, or stored.
class CodecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Code stream does not fit the weight memory.
class CapacityError : public CodecError {
public:
    using CodecError::CodecError;
};

} // namespace blmac
