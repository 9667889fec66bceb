#pragma once

#include <stdexcept>
#include <string>

namespace bg {

// Malformed input: syntax errors, validation failures, bad arguments.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An explicit resource cap (cells, deviations, support pairs) was exceeded.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bg
