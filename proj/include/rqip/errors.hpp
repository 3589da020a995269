#pragma once

#include <stdexcept>
#include <string>

namespace rqip {

// Parameter outside its mathematical domain (e.g. p >= alpha). CLI exit code 2.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Work refused because it exceeds a configured cap (matrix size, support
// enumeration). CLI exit code 3.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rqip
