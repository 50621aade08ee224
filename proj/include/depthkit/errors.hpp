#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace depthkit {

// Input violates an operation's contract (dimension mismatch, bad parameters).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The instance is not in general position for the requested operation.
// `offending` holds indices into the point set involved in the dependency,
// when known; the owning set's size is used as the index of the query point.
class DegeneracyError : public std::runtime_error {
public:
    explicit DegeneracyError(const std::string& what, std::vector<int> indices = {})
        : std::runtime_error(what), offending(std::move(indices)) {}
    std::vector<int> offending;
};

// The requested computation exceeds the configured work cap.
class CapExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace depthkit
