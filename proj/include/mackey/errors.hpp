#pragma once

#include <stdexcept>
#include <string>

namespace mackey {

// Malformed input or a violated precondition (CLI exit code 2).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured search or size bound was exceeded (CLI exit code 3).
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mackey
