#pragma once

#include <stdexcept>
#include <string>

namespace coverlab {

/// Bad user input: malformed files, out-of-range arguments, mismatched shapes.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A search space exceeded its configured guard.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Two internal computations of the same quantity disagreed. Always a bug.
class ConsistencyError : public std::logic_error {
public:
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

} // namespace coverlab
